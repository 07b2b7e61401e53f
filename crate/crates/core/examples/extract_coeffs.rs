//! Partial denominators of `z/G` by repeatedly annihilating the constant
//! term, compared with the closed forms.

use qfrac::{build_g, extract_coeffs, CFCoeffs, ParamPoint, Series};

fn main() -> qfrac::Result<()> {
    let m = 10;
    let point = ParamPoint::from_strs("1/2", "1/3", "1/5", 2 * m + 2)?;
    let g = build_g(&point, m - 1)?;
    let extracted = extract_coeffs(&g, &Series::one(m - 1), m)?;
    let closed = CFCoeffs::closed(&point, m)?;

    println!("{:>3}  {:>40}  closed = extracted", "i", "a_i");
    for (i, (e, c)) in extracted.values().iter().zip(closed.values()).enumerate() {
        println!("{:>3}  {:>40}  {}", i + 1, e.to_string(), e == c);
    }

    // y = x collapses G to 1/(1-z), which has a terminating fraction
    let degenerate = ParamPoint::from_strs("1/2", "1/3", "1/3", 0)?;
    match CFCoeffs::extracted(&degenerate, 5) {
        Err(e) => println!("y = x: {e}"),
        Ok(c) => println!("y = x: {:?}", c.values()),
    }
    Ok(())
}
