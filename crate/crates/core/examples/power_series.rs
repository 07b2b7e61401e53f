//! Truncated power series over the rationals: products, reciprocals,
//! shifts, and order bookkeeping.

use qfrac::arith::{int, rat};
use qfrac::{Error, Series};

fn main() -> qfrac::Result<()> {
    let g = Series::new(vec![int(1), rat(6, 5), rat(162, 125)]);
    let inv = g.recip()?;
    println!("G       = {g}");
    println!("1/G     = {inv}");
    println!("G * 1/G = {}", g.mul(&inv));

    let zg = inv.shift_up();
    println!("z/G     = {zg}");
    println!("(z/G)/z = {}", zg.shift_down()?);

    // mixing orders keeps the smaller one
    let short = Series::new(vec![int(1), int(1)]);
    println!(
        "order of G + (1 + z + O(z^2)) = {}",
        g.add(&short).valid_order()
    );

    // asking past the valid order is an error, never a silent zero
    match g.coeff(3) {
        Err(Error::OrderExceeded { requested, valid }) => {
            println!("coefficient {requested} requested, valid through {valid}")
        }
        other => panic!("unexpected {other:?}"),
    }
    match Series::new(vec![int(0), int(1)]).recip() {
        Err(e) => println!("recip of z: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
