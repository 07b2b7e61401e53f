//! The printed `x = 0` and `y = 0` special cases against extraction. The
//! `y = 0` formula differs in sign by `(-1)^(k-1)` and gets flagged.

use qfrac::verify::{check_specializations, check_y0};
use qfrac::{closed_a, closed_a_y0_printed, CFCoeffs, ParamPoint};

fn main() -> qfrac::Result<()> {
    let point = ParamPoint::from_strs("1/2", "1/3", "0", 20)?;
    let extracted = CFCoeffs::extracted(&point, 8)?;
    println!(
        "{:>3} {:>16} {:>16} {:>16}",
        "i", "extracted", "closed", "printed y=0"
    );
    for i in 1..=8 {
        println!(
            "{:>3} {:>16} {:>16} {:>16}",
            i,
            extracted.values()[i - 1].to_string(),
            closed_a(i, &point)?.to_string(),
            closed_a_y0_printed(i, &point)?.to_string()
        );
    }

    let report = check_y0(&point, 8, 8)?;
    for e in report.flagged() {
        println!(
            "flagged {} a_{}: ratio {}",
            e.check,
            e.index,
            e.ratio.as_deref().unwrap_or("?")
        );
    }

    let batch = check_specializations(12, 12, 0, 5, 0);
    let s = batch.summary();
    println!(
        "sampled specializations: {} reports, {} failures, {} flagged",
        s.points, s.failures, s.flagged
    );
    Ok(())
}
