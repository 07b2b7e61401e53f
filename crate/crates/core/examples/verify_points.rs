//! Randomized exact verification: the expansion, both branches of the
//! recursion, and the initial values, at seeded rational points.

use qfrac::sample_point;
use qfrac::verify::{check_recursion, check_theorem, required_depth, verify_points, VerifyParams};

fn main() -> qfrac::Result<()> {
    let (m, n, k) = (12, 16, 4);
    let point = sample_point(3, required_depth(m, k, n))?;
    println!("sampled: {point}");

    let theorem = check_theorem(&point, m, n)?;
    let recursion = check_recursion(&point, k, n)?;
    println!(
        "theorem checks: {} ({} failed)",
        theorem.checks.len(),
        theorem.failures().count()
    );
    println!(
        "recursion checks: {} ({} failed)",
        recursion.checks.len(),
        recursion.failures().count()
    );

    let batch = verify_points(
        100,
        8,
        VerifyParams {
            depth: m,
            order: n,
            pairs: k,
        },
        0,
    );
    let s = batch.summary();
    println!(
        "batch: {} points, {} checks, {} failures, digest {}",
        s.points, s.checks, s.failures, s.digest
    );
    Ok(())
}
