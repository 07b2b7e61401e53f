//! Randomized exact verification.
//!
//! Every identity is a rational-function identity in `(q, x, y)`. Instead of
//! manipulating rational functions symbolically, each check evaluates both
//! sides exactly at a sampled rational point; a single disagreement is a
//! counterexample, and agreement at generic points certifies the identity
//! with high confidence. Each point is independent, so batches run on a
//! rayon pool and are merged back in seed order.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::{ParamPoint, Rational};
use crate::builders::{build_generalized_g, build_s, build_s0_s1, build_s_odd};
use crate::cfrac::{
    closed_a, closed_a_x0_printed, closed_a_y0_printed, convergent, eval_convergents,
    extract_coeffs, z_over_g, CFCoeffs,
};
use crate::error::{Error, Result};
use crate::series::Series;

/// Bound on sampled numerators and denominators, before reduction.
pub const SAMPLE_HEIGHT: i64 = 64;
pub const SAMPLE_RETRIES: usize = 1000;

pub mod names {
    pub const EXTRACTED_VS_CLOSED: &str = "extracted_vs_closed";
    pub const CONVERGENT_AGREEMENT: &str = "convergent_agreement";
    pub const CONVERGENT_SHARPNESS: &str = "convergent_sharpness";
    pub const RECURSION_BASE: &str = "recursion_base";
    pub const RECURSION_ODD: &str = "recursion_odd";
    pub const RECURSION_EVEN: &str = "recursion_even";
    pub const CONSTANT_CANCELS: &str = "constant_cancels";
    pub const S_CONSTANT_NONZERO: &str = "s_constant_nonzero";
    pub const S1_INITIAL_VS_ODD: &str = "s1_initial_vs_odd_formula";
    pub const Y0_EXTRACTED_VS_CLOSED: &str = "y0_extracted_vs_closed";
    pub const Y0_PRINTED_RATIO: &str = "y0_printed_ratio";
    pub const X0_EXTRACTED_VS_CLOSED: &str = "x0_extracted_vs_closed";
    pub const X0_PRINTED_RATIO: &str = "x0_printed_ratio";
}

/// Flag attached to entries where a printed specialization differs from the
/// extracted coefficient.
pub const PRINTED_DEVIATION: &str = "printed_differs_from_extracted";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub index: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

impl CheckEntry {
    fn new(check: &str, index: usize, passed: bool) -> Self {
        CheckEntry {
            check: check.to_string(),
            index,
            passed,
            lhs: None,
            rhs: None,
            ratio: None,
            flag: None,
        }
    }

    /// Equality check; both sides are recorded only on failure.
    fn equal<T: ToString + PartialEq>(check: &str, index: usize, lhs: &T, rhs: &T) -> Self {
        let mut e = Self::new(check, index, lhs == rhs);
        if !e.passed {
            e.lhs = Some(lhs.to_string());
            e.rhs = Some(rhs.to_string());
        }
        e
    }

    fn with_sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub point: ParamPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub depth: usize,
    pub order: usize,
    pub checks: Vec<CheckEntry>,
}

impl VerifyReport {
    pub fn new(label: &str, point: &ParamPoint, depth: usize, order: usize) -> Self {
        VerifyReport {
            label: label.to_string(),
            point: point.clone(),
            seed: None,
            depth,
            order,
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.flag.is_some())
    }

    pub fn find(&self, check: &str, index: usize) -> Option<&CheckEntry> {
        self.checks
            .iter()
            .find(|c| c.check == check && c.index == index)
    }

    /// Appends every entry of `other`; point and parameters are kept from `self`.
    pub fn merge(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// A point that could not be checked at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointError {
    pub seed: u64,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<ParamPoint>,
    pub error: String,
    pub breakdown: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub reports: Vec<VerifyReport>,
    pub errors: Vec<PointError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub points: usize,
    pub checks: usize,
    pub failures: usize,
    pub flagged: usize,
    pub errors: usize,
    pub digest: String,
}

impl BatchReport {
    pub fn check_count(&self) -> usize {
        self.reports.iter().map(|r| r.checks.len()).sum()
    }

    pub fn failure_count(&self) -> usize {
        self.reports.iter().map(|r| r.failures().count()).sum()
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(VerifyReport::passed)
    }

    pub fn has_breakdown(&self) -> bool {
        self.errors.iter().any(|e| e.breakdown)
    }

    /// SHA-256 over the canonical JSON of reports and errors.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("report serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn summary(&self) -> Summary {
        Summary {
            points: self.reports.len() + self.errors.len(),
            checks: self.check_count(),
            failures: self.failure_count(),
            flagged: self.reports.iter().map(|r| r.flagged().count()).sum(),
            errors: self.errors.len(),
            digest: self.digest(),
        }
    }
}

/// Which parameter, if any, is pinned to zero when sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pin {
    None,
    XZero,
    YZero,
}

impl Pin {
    fn stream(self) -> u64 {
        match self {
            Pin::None => 0,
            Pin::XZero => 1,
            Pin::YZero => 2,
        }
    }
}

/// Deterministic admissible point for `seed`, with `q, x, y` of height at
/// most [`SAMPLE_HEIGHT`] and `q` outside `{0, 1, -1}`.
pub fn sample_point(seed: u64, depth: usize) -> Result<ParamPoint> {
    sample_point_pinned(seed, depth, Pin::None)
}

pub fn sample_point_pinned(seed: u64, depth: usize, pin: Pin) -> Result<ParamPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(pin.stream());
    let draw = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(-SAMPLE_HEIGHT..=SAMPLE_HEIGHT);
        let d = rng.gen_range(1..=SAMPLE_HEIGHT);
        Rational::new(n.into(), d.into())
    };
    for _ in 0..SAMPLE_RETRIES {
        let q = draw(&mut rng);
        let mut x = draw(&mut rng);
        let mut y = draw(&mut rng);
        match pin {
            Pin::None => {}
            Pin::XZero => x = Rational::zero(),
            Pin::YZero => y = Rational::zero(),
        }
        if q.is_zero() || q.abs().is_one() {
            continue;
        }
        if let Ok(p) = ParamPoint::new(q, x, y, depth) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted {
        seed,
        attempts: SAMPLE_RETRIES,
    })
}

/// Depth a sampled point must satisfy to run every check at `(m, k, n)`.
pub fn required_depth(m: usize, k: usize, n: usize) -> usize {
    2 * m.max(2 * k + 2) + n + 2
}

/// Extracted vs closed-form `a_1..a_M`, and convergent agreement with `z/G`
/// through `z^m` for every `m <= M`. For `m < M`, where a nonzero `a_(m+1)`
/// is known to exist, also checks that `C_m` and `z/G` differ at `z^(m+1)`.
pub fn check_theorem(point: &ParamPoint, m: usize, n: usize) -> Result<VerifyReport> {
    if m == 0 || n < m {
        return Err(Error::InvalidInput(format!(
            "need 1 <= M <= N, got M = {m}, N = {n}"
        )));
    }
    let mut report = VerifyReport::new("theorem", point, m, n);
    let g = crate::builders::build_g(point, n)?;
    let extracted = extract_coeffs(&g, &Series::one(n), m)?;
    let closed = CFCoeffs::closed(point, m)?;
    for (i, (e, c)) in extracted.values().iter().zip(closed.values()).enumerate() {
        report
            .checks
            .push(CheckEntry::equal(names::EXTRACTED_VS_CLOSED, i + 1, e, c));
    }

    let zg = g.recip()?.shift_up().truncate(n);
    // C_m only has to be expanded one order past the agreement bound
    let mut sharpness = Vec::new();
    for mm in 1..=m {
        let conv = convergent(&closed, mm, (mm + 1).min(n))?;
        let diff = conv.first_difference(&zg, mm)?;
        let mut e = CheckEntry::new(names::CONVERGENT_AGREEMENT, mm, diff.is_none());
        if let Some(at) = diff {
            e = e.with_sides(
                format!("C_{mm}[z^{at}] = {}", conv.coeffs()[at]),
                format!("z/G[z^{at}] = {}", zg.coeffs()[at]),
            );
        }
        report.checks.push(e);
        if mm < m {
            let (c, s) = (&conv.coeffs()[mm + 1], &zg.coeffs()[mm + 1]);
            let mut e = CheckEntry::new(names::CONVERGENT_SHARPNESS, mm, c != s);
            if c == s {
                e = e.with_sides(c, s);
            }
            sharpness.push(e);
        }
    }
    report.checks.extend(sharpness);
    Ok(report)
}

/// Instantiates both parity branches of the recursion with the explicit
/// `s_i` builders and closed-form `a_i`:
///
/// * base: `z s_2 = s_0 - a_2 s_1`
/// * odd: `z s_(2k+1) = s_(2k-1) - a_(2k+1) s_(2k)` for `k = 1..=K`
/// * even: `z s_(2k+2) = s_(2k) - a_(2k+2) s_(2k+1)` for `k = 1..=K`
///
/// Entries are indexed by the series produced (`2`, `2k+1`, `2k+2`).
pub fn check_recursion(point: &ParamPoint, k_max: usize, n: usize) -> Result<VerifyReport> {
    let top = 2 * k_max + 2;
    let mut report = VerifyReport::new("recursion", point, top, n);
    let s = (0..=top)
        .map(|i| build_s(i, point, n))
        .collect::<Result<Vec<_>>>()?;
    for (j, sj) in s.iter().enumerate() {
        report.checks.push(CheckEntry::new(
            names::S_CONSTANT_NONZERO,
            j,
            !sj.const_term().is_zero(),
        ));
    }
    for i in 1..top {
        let a = closed_a(i + 1, point)?;
        let rhs = s[i - 1].sub(&s[i].scale(&a));
        report.checks.push(CheckEntry::equal(
            names::CONSTANT_CANCELS,
            i + 1,
            rhs.const_term(),
            &Rational::zero(),
        ));
        let lhs = s[i + 1].shift_up();
        let name = match i {
            1 => names::RECURSION_BASE,
            _ if i % 2 == 0 => names::RECURSION_ODD,
            _ => names::RECURSION_EVEN,
        };
        let diff = lhs.first_difference(&rhs, n)?;
        let mut e = CheckEntry::new(name, i + 1, diff.is_none());
        if let Some(at) = diff {
            e = e.with_sides(
                format!("z*s_{}[z^{at}] = {}", i + 1, lhs.coeffs()[at]),
                format!(
                    "(s_{} - a_{} s_{})[z^{at}] = {}",
                    i - 1,
                    i + 1,
                    i,
                    rhs.coeffs()[at]
                ),
            );
        }
        report.checks.push(e);
    }
    Ok(report)
}

/// The odd explicit formula at `k = 0` against the initial value of `s_1`,
/// coefficient by coefficient through `z^n`.
pub fn check_initial_values(point: &ParamPoint, n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("initial_values", point, 1, n);
    let (_, s1) = build_s0_s1(point, n)?;
    let odd = build_s_odd(0, point, n)?;
    for (j, (a, b)) in odd.coeffs().iter().zip(s1.coeffs()).enumerate() {
        report
            .checks
            .push(CheckEntry::equal(names::S1_INITIAL_VS_ODD, j, a, b));
    }
    Ok(report)
}

/// `(-1)^(k-1)` for indices `2k` and `2k+1`, and 1 for `a_1`.
pub fn expected_y0_ratio(i: usize) -> Rational {
    let k = i / 2;
    if k >= 1 && (k - 1) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Specialization report at a point with `y = 0`: extraction against the
/// general closed form (asserted), and the printed `y = 0` formula against
/// extraction (ratio recorded; passes when it matches [`expected_y0_ratio`],
/// and any entry with ratio other than 1 is flagged).
pub fn check_y0(point: &ParamPoint, m: usize, n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("specialization_y0", point, m, n);
    let extracted = extract_at(point, m, n)?;
    for i in 1..=m {
        let e = &extracted.values()[i - 1];
        let closed = closed_a(i, point)?;
        report.checks.push(CheckEntry::equal(
            names::Y0_EXTRACTED_VS_CLOSED,
            i,
            e,
            &closed,
        ));
        let printed = closed_a_y0_printed(i, point)?;
        report.checks.push(ratio_entry(
            names::Y0_PRINTED_RATIO,
            i,
            &printed,
            e,
            &expected_y0_ratio(i),
        ));
    }
    Ok(report)
}

/// Same as [`check_y0`] for `x = 0`, where the expected ratio is always 1.
pub fn check_x0(point: &ParamPoint, m: usize, n: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("specialization_x0", point, m, n);
    let extracted = extract_at(point, m, n)?;
    for i in 1..=m {
        let e = &extracted.values()[i - 1];
        let closed = closed_a(i, point)?;
        report.checks.push(CheckEntry::equal(
            names::X0_EXTRACTED_VS_CLOSED,
            i,
            e,
            &closed,
        ));
        let printed = closed_a_x0_printed(i, point)?;
        report.checks.push(ratio_entry(
            names::X0_PRINTED_RATIO,
            i,
            &printed,
            e,
            &Rational::one(),
        ));
    }
    Ok(report)
}

fn ratio_entry(
    name: &str,
    i: usize,
    printed: &Rational,
    extracted: &Rational,
    expected: &Rational,
) -> CheckEntry {
    let ratio = printed / extracted;
    let mut e = CheckEntry::new(name, i, &ratio == expected).with_sides(printed, extracted);
    if !ratio.is_one() {
        e.flag = Some(PRINTED_DEVIATION.to_string());
    }
    e.ratio = Some(ratio.to_string());
    e
}

fn extract_at(point: &ParamPoint, m: usize, n: usize) -> Result<CFCoeffs> {
    let order = n.max(m.saturating_sub(1));
    let g = crate::builders::build_g(point, order)?;
    extract_coeffs(&g, &Series::one(order), m)
}

/// Result of one labelled check run at one seed. `point` is set whenever
/// sampling succeeded, so errors keep their context.
#[derive(Debug)]
pub struct Outcome {
    pub label: String,
    pub point: Option<ParamPoint>,
    pub result: Result<VerifyReport>,
}

impl Outcome {
    pub fn run(
        label: &str,
        sampled: Result<ParamPoint>,
        check: impl FnOnce(&ParamPoint) -> Result<VerifyReport>,
    ) -> Self {
        match sampled {
            Ok(p) => Outcome {
                label: label.to_string(),
                result: check(&p),
                point: Some(p),
            },
            Err(e) => Outcome {
                label: label.to_string(),
                point: None,
                result: Err(e),
            },
        }
    }
}

/// Runs `f` for every seed on a pool of `jobs` threads (0 = all cores) and
/// merges the results in seed order.
pub fn run_batch<F>(seeds: &[u64], jobs: usize, f: F) -> BatchReport
where
    F: Fn(u64) -> Vec<Outcome> + Sync + Send,
{
    let work = || -> Vec<(u64, Vec<Outcome>)> { seeds.par_iter().map(|&s| (s, f(s))).collect() };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut results = results;
    results.sort_by_key(|(s, _)| *s);
    let mut batch = BatchReport::default();
    for (seed, outcomes) in results {
        for Outcome {
            label,
            point,
            result,
        } in outcomes
        {
            match result {
                Ok(r) => batch.reports.push(r.with_seed(seed)),
                Err(e) => batch.errors.push(PointError {
                    seed,
                    label,
                    point,
                    breakdown: e.is_breakdown(),
                    error: e.to_string(),
                }),
            }
        }
    }
    batch
}

pub fn seeds(base: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| base.wrapping_add(i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyParams {
    /// Number of partial denominators `M`.
    pub depth: usize,
    /// Series order `N`.
    pub order: usize,
    /// Recursion pairs `K`.
    pub pairs: usize,
}

/// Theorem, recursion and initial-value checks at `points` sampled points.
pub fn verify_points(
    base_seed: u64,
    points: usize,
    params: VerifyParams,
    jobs: usize,
) -> BatchReport {
    let VerifyParams {
        depth: m,
        order: n,
        pairs: k,
    } = params;
    let depth = required_depth(m, k, n);
    run_batch(&seeds(base_seed, points), jobs, |seed| {
        vec![Outcome::run("verify", sample_point(seed, depth), |p| {
            let mut r = check_theorem(p, m, n)?;
            r.label = "verify".into();
            r.merge(check_recursion(p, k, n)?);
            r.merge(check_initial_values(p, n)?);
            Ok(r)
        })]
    })
}

/// `y = 0` and `x = 0` specialization reports at `points` seeds each.
pub fn check_specializations(
    m: usize,
    n: usize,
    base_seed: u64,
    points: usize,
    jobs: usize,
) -> BatchReport {
    let depth = required_depth(m, 0, n);
    run_batch(&seeds(base_seed, points), jobs, |seed| {
        vec![
            Outcome::run(
                "specialization_y0",
                sample_point_pinned(seed, depth, Pin::YZero),
                |p| check_y0(p, m, n),
            ),
            Outcome::run(
                "specialization_x0",
                sample_point_pinned(seed, depth, Pin::XZero),
                |p| check_x0(p, m, n),
            ),
        ]
    })
}

/// Generalized series with extra Pochhammer factors in numerator and
/// denominator.
#[derive(Debug, Clone)]
pub struct GeneralizedSpec {
    pub extra_numerator_params: Vec<Rational>,
    pub extra_denominator_params: Vec<Rational>,
    pub point: ParamPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreRow {
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extracted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<String>,
}

/// Extracted `a_1..a_M` for the generalized series. Nothing is asserted; a
/// breakdown is recorded at the index where it happens and ends the table.
pub fn explore_generalized(spec: &GeneralizedSpec, m: usize) -> Result<Vec<ExploreRow>> {
    let order = m.saturating_sub(1);
    let g = build_generalized_g(
        &spec.point,
        &spec.extra_numerator_params,
        &spec.extra_denominator_params,
        order,
    )?;
    let one = Series::one(order);
    let (values, failure) = match extract_coeffs(&g, &one, m) {
        Ok(c) => (c.values().to_vec(), None),
        Err(e @ Error::Breakdown { index, .. }) => {
            let prefix = if index > 1 {
                extract_coeffs(&g, &one, index - 1)?.values().to_vec()
            } else {
                Vec::new()
            };
            (prefix, Some((index, e.to_string())))
        }
        Err(e) => return Err(e),
    };
    let mut rows: Vec<ExploreRow> = values
        .iter()
        .enumerate()
        .map(|(i, v)| ExploreRow {
            i: i + 1,
            extracted: Some(v.to_string()),
            breakdown: None,
        })
        .collect();
    if let Some((index, msg)) = failure {
        rows.push(ExploreRow {
            i: index,
            extracted: None,
            breakdown: Some(msg),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StudyRow {
    pub m: usize,
    pub convergent: String,
    pub convergent_error: String,
    pub partial_sum_error: String,
    pub convergent_error_approx: String,
    pub partial_sum_error_approx: String,
}

/// Evaluates `C_1(z)..C_M(z)` exactly at a rational `z` and compares each
/// against a partial sum `S` of `z/G` through `z^ref_order`, alongside the
/// error of the degree-`m` partial sum itself. Raw data only.
pub fn numeric_convergence_study(
    point: &ParamPoint,
    z: &Rational,
    m_max: usize,
    ref_order: usize,
) -> Result<Vec<StudyRow>> {
    if point.q().abs() >= Rational::one() {
        return Err(Error::InvalidInput(format!(
            "numeric study needs |q| < 1, got q = {}",
            point.q()
        )));
    }
    if ref_order < m_max {
        return Err(Error::InvalidInput(format!(
            "reference order {ref_order} must be at least m_max = {m_max}"
        )));
    }
    let coeffs = CFCoeffs::closed(point, m_max)?;
    let values = eval_convergents(&coeffs, z)?;
    let zg = z_over_g(point, ref_order)?;
    let reference = zg.eval_partial(z, ref_order)?;
    values
        .into_iter()
        .enumerate()
        .map(|(idx, c)| {
            let m = idx + 1;
            let err = (&c - &reference).abs();
            let partial = (zg.eval_partial(z, m)? - &reference).abs();
            Ok(StudyRow {
                m,
                convergent: c.to_string(),
                convergent_error_approx: approx(&err),
                partial_sum_error_approx: approx(&partial),
                convergent_error: err.to_string(),
                partial_sum_error: partial.to_string(),
            })
        })
        .collect()
}

/// Scientific-notation rendering of an exact value, for human reading only.
pub fn approx(r: &Rational) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.6e}"),
        None => "nan".into(),
    }
}

/// Pinned reference point used in examples and documentation.
pub fn reference_point(depth: usize) -> ParamPoint {
    ParamPoint::new(
        Rational::new(1.into(), 2.into()),
        Rational::new(1.into(), 3.into()),
        Rational::new(1.into(), 5.into()),
        depth,
    )
    .expect("reference point is admissible")
}
