//! Exact convergent values at a real `z`, compared with a long partial sum
//! of `z/G`. The approximate columns are for reading only.

use qfrac::arith::rat;
use qfrac::verify::numeric_convergence_study;
use qfrac::ParamPoint;

fn main() -> qfrac::Result<()> {
    let m_max = 10;
    let point = ParamPoint::from_strs("1/2", "1/3", "1/5", 2 * m_max + 2)?;
    let rows = numeric_convergence_study(&point, &rat(1, 10), m_max, 2 * m_max + 8)?;
    println!("{:>3} {:>14} {:>14}", "m", "|C_m - S|", "|P_m - S|");
    for r in rows {
        println!(
            "{:>3} {:>14} {:>14}",
            r.m, r.convergent_error_approx, r.partial_sum_error_approx
        );
    }
    Ok(())
}
