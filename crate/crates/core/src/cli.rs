//! Command-line driver. [`CliConfig`] is parsed with clap, [`run`] turns it
//! into a report string and an exit code, and the `qfrac` binary only wires
//! the two to the process.
//!
//! Exit codes: 0 all checks pass, 1 identity mismatch, 2 invalid or
//! inadmissible input, 3 breakdown during extraction.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};

use crate::arith::{parse_rational, ParamPoint, Rational};
use crate::builders::build_g;
use crate::cfrac::{convergents, extract_coeffs, z_over_g, CFCoeffs};
use crate::error::{Error, Result};
use crate::series::Series;
use crate::verify::{
    approx, check_specializations, explore_generalized, numeric_convergence_study, sample_point,
    verify_points, BatchReport, GeneralizedSpec, VerifyParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BREAKDOWN: i32 = 3;

const DEFAULT_DEPTH: usize = 20;
const DEFAULT_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Partial denominators a_1..a_M, extracted and closed-form side by side
    Coeffs,
    /// Coefficients of G and z/G
    Expand,
    /// Convergents C_1..C_M as power series
    Convergents,
    /// Theorem, recursion and initial-value checks at sampled points
    Verify,
    /// Printed x = 0 and y = 0 specializations at sampled points
    Special,
    /// Extraction for G with extra Pochhammer factors
    Explore,
    /// Exact evaluation of convergents at a rational z
    Study,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Expand => "expand",
            Command::Convergents => "convergents",
            Command::Verify => "verify",
            Command::Special => "special",
            Command::Explore => "explore",
            Command::Study => "study",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Exact C-fraction coefficients of z/G(z) and randomized identity checks.
#[derive(Debug, Clone, Parser)]
#[command(name = "qfrac", version)]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// q as an exact rational "p/q"
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,

    /// Number of partial denominators M
    #[arg(short = 'M', long = "depth")]
    pub depth: Option<usize>,

    /// Series order N (must be >= M)
    #[arg(short = 'N', long = "order")]
    pub order: Option<usize>,

    /// Recursion pairs K checked by `verify`
    #[arg(short = 'K', long = "pairs", default_value_t = 8)]
    pub pairs: usize,

    #[arg(long, env = "QFRAC_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,

    /// Extra numerator parameters for `explore` (repeatable)
    #[arg(long = "u")]
    pub u: Vec<String>,

    /// Extra denominator parameters for `explore` (repeatable)
    #[arg(long = "v")]
    pub v: Vec<String>,

    /// Evaluation point for `study`
    #[arg(long, default_value = "1/10")]
    pub z: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads for batch commands (0 = all available)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

impl CliConfig {
    pub fn depth_or_default(&self) -> usize {
        self.depth.unwrap_or(DEFAULT_DEPTH)
    }

    pub fn order_or(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Machine-readable document emitted for every command.
struct Doc {
    command: Command,
    params: Map<String, Value>,
    results: Vec<Value>,
    failures: Vec<Value>,
    seed: Option<u64>,
    summary: Option<Value>,
    exit_code: i32,
}

pub fn run(config: &CliConfig) -> RunOutput {
    match execute(config) {
        Ok(doc) => {
            let stdout = render(&doc, config.format);
            RunOutput {
                exit_code: doc.exit_code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => RunOutput {
            exit_code: if e.is_breakdown() {
                EXIT_BREAKDOWN
            } else {
                EXIT_INVALID
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (including the program name), runs, and writes to `--out`
/// when given.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            return RunOutput {
                exit_code: code,
                stdout: if e.use_stderr() {
                    String::new()
                } else {
                    e.to_string()
                },
                stderr: if e.use_stderr() {
                    e.to_string()
                } else {
                    String::new()
                },
            };
        }
    };
    let mut out = run(&config);
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            out.stderr
                .push_str(&format!("error: writing {}: {e}\n", path.display()));
            out.exit_code = EXIT_INVALID;
        }
        out.stdout.clear();
    }
    out
}

fn execute(config: &CliConfig) -> Result<Doc> {
    let m = config.depth_or_default();
    if m == 0 {
        return Err(Error::InvalidInput("M must be at least 1".into()));
    }
    let default_order = match config.command {
        Command::Study => 2 * m + 8,
        _ => m + 4,
    };
    let n = config.order_or(default_order);
    if n < m {
        return Err(Error::InvalidInput(format!("N = {n} must be >= M = {m}")));
    }
    let mut doc = Doc {
        command: config.command,
        params: Map::new(),
        results: Vec::new(),
        failures: Vec::new(),
        seed: None,
        summary: None,
        exit_code: EXIT_OK,
    };
    doc.params.insert("M".into(), json!(m));
    doc.params.insert("N".into(), json!(n));

    match config.command {
        Command::Coeffs => {
            let point = resolve_point(config, &mut doc, m + 1)?;
            let g = build_g(&point, n)?;
            // extraction first: a breakdown explains why a closed form may be undefined
            let extracted = extract_coeffs(&g, &Series::one(n), m)?;
            let closed = CFCoeffs::closed(&point, m)?;
            for (i, (c, e)) in closed.values().iter().zip(extracted.values()).enumerate() {
                doc.results.push(json!({
                    "i": i + 1,
                    "closed": c.to_string(),
                    "extracted": e.to_string(),
                }));
                if c != e {
                    doc.failures.push(json!({
                        "check": "extracted_vs_closed",
                        "index": i + 1,
                        "lhs": e.to_string(),
                        "rhs": c.to_string(),
                    }));
                }
            }
        }
        Command::Expand => {
            let point = resolve_point(config, &mut doc, 0)?;
            let g = build_g(&point, n)?;
            let zg = z_over_g(&point, n)?;
            for (idx, (gc, zc)) in g.coeffs().iter().zip(zg.coeffs()).enumerate() {
                doc.results.push(json!({
                    "n": idx,
                    "g": gc.to_string(),
                    "z_over_g": zc.to_string(),
                }));
            }
        }
        Command::Convergents => {
            let point = resolve_point(config, &mut doc, m + 1)?;
            let closed = CFCoeffs::closed(&point, m)?;
            for (idx, c) in convergents(&closed, n)?.iter().enumerate() {
                doc.results.push(json!({
                    "m": idx + 1,
                    "a": closed.values()[idx].to_string(),
                    "coeffs": strings(c.coeffs()),
                }));
            }
        }
        Command::Verify => {
            doc.seed = Some(config.seed);
            doc.params.insert("K".into(), json!(config.pairs));
            doc.params.insert("points".into(), json!(config.points));
            let params = VerifyParams {
                depth: m,
                order: n,
                pairs: config.pairs,
            };
            let batch = verify_points(config.seed, config.points, params, config.jobs);
            fill_batch(&mut doc, &batch);
        }
        Command::Special => {
            doc.seed = Some(config.seed);
            doc.params.insert("points".into(), json!(config.points));
            let batch = check_specializations(m, n, config.seed, config.points, config.jobs);
            fill_batch(&mut doc, &batch);
        }
        Command::Explore => {
            let point = resolve_point(config, &mut doc, m + 1)?;
            let spec = GeneralizedSpec {
                extra_numerator_params: parse_all(&config.u)?,
                extra_denominator_params: parse_all(&config.v)?,
                point,
            };
            doc.params.insert("u".into(), json!(config.u));
            doc.params.insert("v".into(), json!(config.v));
            for row in explore_generalized(&spec, m)? {
                doc.results
                    .push(serde_json::to_value(row).expect("row serializes"));
            }
        }
        Command::Study => {
            let point = resolve_point(config, &mut doc, m + 1)?;
            let z = parse_rational(&config.z)?;
            doc.params.insert("z".into(), json!(z.to_string()));
            for row in numeric_convergence_study(&point, &z, m, n)? {
                doc.results
                    .push(serde_json::to_value(row).expect("row serializes"));
            }
        }
    }
    if doc.exit_code == EXIT_OK && !doc.failures.is_empty() {
        doc.exit_code = EXIT_MISMATCH;
    }
    Ok(doc)
}

/// Point from `--q/--x/--y`, or sampled from `--seed` when all three are absent.
fn resolve_point(config: &CliConfig, doc: &mut Doc, depth: usize) -> Result<ParamPoint> {
    let point = match (&config.q, &config.x, &config.y) {
        (Some(q), Some(x), Some(y)) => ParamPoint::from_strs(q, x, y, 0)?,
        (None, None, None) => {
            doc.seed = Some(config.seed);
            sample_point(config.seed, depth)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "give all of --q, --x, --y or none of them".into(),
            ))
        }
    };
    doc.params.insert("q".into(), json!(point.q().to_string()));
    doc.params.insert("x".into(), json!(point.x().to_string()));
    doc.params.insert("y".into(), json!(point.y().to_string()));
    Ok(point)
}

fn fill_batch(doc: &mut Doc, batch: &BatchReport) {
    for r in &batch.reports {
        let flagged: Vec<Value> = r
            .flagged()
            .map(|c| {
                json!({
                    "check": c.check,
                    "index": c.index,
                    "printed": c.lhs,
                    "extracted": c.rhs,
                    "ratio": c.ratio,
                })
            })
            .collect();
        let mut entry = json!({
            "seed": r.seed,
            "label": r.label,
            "point": r.point,
            "checks": r.checks.len(),
            "failures": r.failures().count(),
        });
        if !flagged.is_empty() {
            entry["flagged"] = Value::Array(flagged);
        }
        doc.results.push(entry);
        for f in r.failures() {
            let mut v = serde_json::to_value(f).expect("entry serializes");
            v["seed"] = json!(r.seed);
            v["label"] = json!(r.label);
            doc.failures.push(v);
        }
    }
    for e in &batch.errors {
        doc.failures
            .push(serde_json::to_value(e).expect("error serializes"));
    }
    let summary = batch.summary();
    let mut s = serde_json::to_value(&summary).expect("summary serializes");
    if summary.flagged > 0 {
        s["note"] = json!(
            "printed y = 0 specialization differs from extraction by (-1)^(k-1) at indices 2k, 2k+1"
        );
    }
    doc.summary = Some(s);
    doc.exit_code = if batch.failure_count() > 0 {
        EXIT_MISMATCH
    } else if batch.has_breakdown() {
        EXIT_BREAKDOWN
    } else if !batch.errors.is_empty() {
        EXIT_INVALID
    } else {
        EXIT_OK
    };
}

fn parse_all(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn render(doc: &Doc, format: Format) -> String {
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("command".into(), json!(doc.command.name()));
            top.insert("params".into(), Value::Object(doc.params.clone()));
            top.insert("results".into(), Value::Array(doc.results.clone()));
            top.insert("failures".into(), Value::Array(doc.failures.clone()));
            top.insert("seed".into(), json!(doc.seed));
            if let Some(s) = &doc.summary {
                top.insert("summary".into(), s.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&doc.results),
        Format::Text => render_text(doc),
    }
}

/// One row per result; nested values are embedded as JSON text.
fn render_csv(results: &[Value]) -> String {
    let mut header: Vec<String> = Vec::new();
    for r in results {
        if let Value::Object(map) = r {
            for k in map.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in results {
        let row: Vec<String> = header.iter().map(|k| cell(r.get(k))).collect();
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn render_text(doc: &Doc) -> String {
    let mut out = String::new();
    let params: Vec<String> = doc
        .params
        .iter()
        .map(|(k, v)| format!("{k}={}", cell(Some(v))))
        .collect();
    let _ = writeln!(out, "{} {}", doc.command.name(), params.join(" "));
    for r in &doc.results {
        let line = match r {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={}", cell(Some(v))))
                .collect::<Vec<_>>()
                .join("  "),
            other => other.to_string(),
        };
        let _ = writeln!(out, "{line}");
        if doc.command == Command::Study {
            if let Some(err) = r.get("convergent_error").and_then(Value::as_str) {
                if let Ok(v) = parse_rational(err) {
                    let _ = writeln!(out, "    |C_m - S| ~ {}", approx(&v));
                }
            }
        }
    }
    for f in &doc.failures {
        let _ = writeln!(out, "FAIL {f}");
    }
    if let Some(s) = &doc.summary {
        let _ = writeln!(out, "summary {s}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> RunOutput {
        run_args(std::iter::once("qfrac").chain(line.split_whitespace()))
    }

    #[test]
    fn coeffs_json_example() {
        let out = run_line("coeffs --q 1/2 --x 1/3 --y 1/5 -M 3");
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            v["results"],
            json!([
                {"i": 1, "closed": "1", "extracted": "1"},
                {"i": 2, "closed": "5/6", "extracted": "5/6"},
                {"i": 3, "closed": "-10/9", "extracted": "-10/9"},
            ])
        );
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "params", "results", "failures", "seed"]);
    }

    #[test]
    fn inadmissible_exit_code() {
        let out = run_line("coeffs --q 1/2 --x 1/3 --y 1 -M 2");
        assert_eq!(out.exit_code, EXIT_INVALID);
        assert!(out.stderr.contains("(1 - y)"), "{}", out.stderr);
    }

    #[test]
    fn decimals_rejected() {
        let out = run_line("coeffs --q 0.5 --x 1/3 --y 1/5 -M 2");
        assert_eq!(out.exit_code, EXIT_INVALID);
    }

    #[test]
    fn order_below_depth_rejected() {
        assert_eq!(
            run_line("coeffs --q 1/2 --x 1/3 --y 1/5 -M 4 -N 3").exit_code,
            EXIT_INVALID
        );
        assert_eq!(
            run_line("coeffs --q 1/2 --x 1/3 --y 1/5 -M 0").exit_code,
            EXIT_INVALID
        );
    }

    #[test]
    fn partial_point_rejected() {
        assert_eq!(run_line("coeffs --q 1/2 -M 2").exit_code, EXIT_INVALID);
    }

    #[test]
    fn breakdown_exit_code() {
        // y = x terminates the fraction after a_3; the closed form then has a zero
        let out = run_line("coeffs --q 1/2 --x 1/3 --y 1/3 -M 4");
        assert_eq!(out.exit_code, EXIT_BREAKDOWN, "{}", out.stderr);
        let out = run_line("coeffs --q 1/2 --x 1/3 --y 1/3 -M 3");
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
        let out = run_line("explore --q 1/2 --x 1/3 --y 1/3 -M 5");
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.stdout.contains("breakdown"));
    }

    #[test]
    fn csv_and_text_formats() {
        let out = run_line("expand --q 1/2 --x 1/3 --y 1/5 -M 2 -N 2 --format csv");
        assert_eq!(out.stdout, "n,g,z_over_g\n0,1,0\n1,6/5,1\n2,162/125,-6/5\n");
        let out = run_line("coeffs --q 1/2 --x 1/3 --y 1/5 -M 2 --format text");
        assert!(
            out.stdout.contains("i=2  closed=5/6  extracted=5/6"),
            "{}",
            out.stdout
        );
    }

    #[test]
    fn out_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let out = run_args([
            "qfrac",
            "coeffs",
            "--q",
            "1/2",
            "--x",
            "1/3",
            "--y",
            "1/5",
            "-M",
            "2",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.stdout.is_empty());
        assert!(std::fs::read_to_string(path).unwrap().contains("\"5/6\""));
    }
}
