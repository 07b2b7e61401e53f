//! Convergents `C_m = h_m / k_m` of the closed-form fraction and how far
//! each one agrees with the series of `z/G`.

use qfrac::{convergent, z_over_g, CFCoeffs, ParamPoint};

fn main() -> qfrac::Result<()> {
    let m_max = 8;
    let point = ParamPoint::from_strs("1/2", "1/3", "1/5", 2 * m_max + 2)?;
    let coeffs = CFCoeffs::closed(&point, m_max)?;
    let zg = z_over_g(&point, m_max + 1)?;

    for m in 1..=m_max {
        let c = convergent(&coeffs, m, m_max + 1)?;
        let first = c.first_difference(&zg, m_max + 1)?;
        println!(
            "C_{m}: first disagreement with z/G at {}",
            first.map_or("none".into(), |n| format!("z^{n}"))
        );
    }
    println!("C_2 = {}", convergent(&coeffs, 2, 3)?);

    let values = qfrac::cfrac::eval_convergents(&coeffs, &qfrac::arith::rat(1, 10))?;
    for (m, v) in values.iter().enumerate() {
        println!("C_{}(1/10) = {}", m + 1, qfrac::verify::approx(v));
    }
    Ok(())
}
