//! Coefficients of `G(z) = sum (y;q)_n/(x;q)_n z^n` and the explicit
//! series `s_i` from the proof of the expansion.

use qfrac::{build_g, build_s, z_over_g, ParamPoint};

fn main() -> qfrac::Result<()> {
    let point = ParamPoint::from_strs("1/2", "1/3", "1/5", 12)?;
    println!("point: {point}");
    println!("G   = {}", build_g(&point, 4)?);
    println!("z/G = {}", z_over_g(&point, 4)?);
    for i in 0..6 {
        println!("s_{i} = {}", build_s(i, &point, 3)?);
    }
    Ok(())
}
