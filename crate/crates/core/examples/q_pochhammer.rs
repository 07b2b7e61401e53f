//! q-Pochhammer symbols and the pole-free cross product `Q_k`.
//!
//! ```text
//! cargo run --example q_pochhammer
//! ```

use qfrac::arith::rat;
use qfrac::{cross_poch, pochhammer, q_binom2, q_pow, ParamPoint};

fn main() -> qfrac::Result<()> {
    let q = rat(1, 2);
    let x = rat(1, 3);
    let y = rat(1, 5);

    for n in 0..4 {
        println!("(1/3; 1/2)_{n} = {}", pochhammer(&x, &q, n));
    }
    println!("(q;q)_3 at q=1/2 = {}", pochhammer(&q, &q, 3));
    println!("q^-3 at q=1/2 = {}", q_pow(&q, -3)?);
    println!("C(4,2) = {}", q_binom2(4));

    // Q_k = prod_{j<k-1} (y - x q^j) stays finite at y = 0
    for k in 1..4 {
        println!("Q_{k}(x=1/3, y=1/5) = {}", cross_poch(&x, &y, &q, k));
    }
    println!("Q_3(x=1/3, y=0) = {}", cross_poch(&x, &rat(0, 1), &q, 3));

    // admissibility names the factor that vanishes
    match ParamPoint::from_strs("1/2", "1/3", "1", 4) {
        Ok(_) => unreachable!(),
        Err(e) => println!("y = 1 rejected: {e}"),
    }
    match ParamPoint::from_strs("1/2", "4", "1/5", 4) {
        Ok(_) => unreachable!(),
        Err(e) => println!("x = 4, q = 1/2 rejected: {e}"),
    }
    Ok(())
}
