//! Extraction for `G` with extra Pochhammer factors, where no closed form
//! is claimed. Prints the raw coefficients for inspection.

use qfrac::arith::rat;
use qfrac::verify::{explore_generalized, GeneralizedSpec};
use qfrac::ParamPoint;

fn main() -> qfrac::Result<()> {
    let spec = GeneralizedSpec {
        extra_numerator_params: vec![rat(1, 7)],
        extra_denominator_params: vec![rat(2, 9)],
        point: ParamPoint::from_strs("1/2", "1/3", "1/5", 0)?,
    };
    for row in explore_generalized(&spec, 6)? {
        match (row.extracted, row.breakdown) {
            (Some(v), _) => println!("a_{} = {v}", row.i),
            (None, Some(b)) => println!("a_{}: {b}", row.i),
            _ => {}
        }
    }

    // u = v cancels, reducing to the basic series
    let trivial = GeneralizedSpec {
        extra_numerator_params: vec![rat(3, 4)],
        extra_denominator_params: vec![rat(3, 4)],
        point: spec.point.clone(),
    };
    let rows = explore_generalized(&trivial, 4)?;
    println!(
        "u = v: a_4 = {}",
        rows[3].extracted.as_deref().unwrap_or("-")
    );
    Ok(())
}
