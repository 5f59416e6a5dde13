//! Command-line front end: matrix file parsing, report rendering and the
//! `solve`, `charpoly`, `verify` and `forms` subcommands.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::{BigInt, BigRational, Num, Zero};
use serde_json::{json, Map, Value};

use crate::charpoly::build_char_system;
use crate::checks::check_all_forms;
use crate::error::Error;
use crate::quaternion::{QuatF, Quaternion, QuaternionMatrix, Scalar};
use crate::representation::{enumerate_forms, SignedPerm};
use crate::solver::{left_spectrum_report, verify_left_eigenvalue, EigenCertificate, SolveConfig, SpectrumReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_REJECT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quatleft", version, about = "Left eigenvalues of quaternion matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for left eigenvalues and print a report
    Solve(SolveArgs),
    /// Print the characteristic polynomial system
    Charpoly {
        path: PathBuf,
        /// Also print the full determinant of the 4m×4m pencil
        #[arg(long)]
        full: bool,
    },
    /// Certify a candidate left eigenvalue
    Verify {
        path: PathBuf,
        /// Candidate as q0,q1,q2,q3 (integers, decimals or p/q)
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// List the 48 representation forms
    Forms {
        /// Run the identity suites on every form
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-iter", default_value_t = 100)]
    pub max_iter: usize,
    /// Points sampled when a manifold is detected
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
    /// Include runtime_ms in the report
    #[arg(long)]
    pub timing: bool,
}

/// Input problem with the 1-based line it was found on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for InputError {}

fn line_of(text: &str, needle: &str) -> usize {
    text.lines().position(|l| l.contains(needle)).map_or(1, |i| i + 1)
}

/// Exact rational from "p/q", an integer, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).ok()?;
        let q = BigInt::from_str_radix(q.trim(), 10).ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n = BigInt::from_str_radix(&format!("{int}{frac}"), 10).ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(n);
    if shift >= 0 {
        r *= BigRational::from_integer(num::pow(ten, shift as usize));
    } else {
        r /= BigRational::from_integer(num::pow(ten, (-shift) as usize));
    }
    Some(if neg { -r } else { r })
}

fn parse_scalar(v: &Value, text: &str, at: &str) -> Result<Scalar, InputError> {
    match v {
        Value::Number(n) => {
            let lit = n.to_string();
            if let Ok(i) = BigInt::from_str_radix(&lit, 10) {
                return Ok(BigRational::from_integer(i));
            }
            // plain floats: exact binary expansion
            n.as_f64()
                .and_then(BigRational::from_float)
                .ok_or_else(|| InputError { line: line_of(text, &lit), message: format!("{at}: number {lit} is not finite") })
        }
        Value::String(s) => parse_rational(s).ok_or_else(|| InputError {
            line: line_of(text, &format!("\"{s}\"")),
            message: format!("{at}: cannot parse \"{s}\" as a rational"),
        }),
        other => Err(InputError { line: line_of(text, "\"entries\""), message: format!("{at}: expected a number or string, found {other}") }),
    }
}

/// Parses a MatrixFile document; non-square shapes are accepted here.
pub fn parse_matrix_file(text: &str) -> Result<QuaternionMatrix, InputError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError { line: e.line().max(1), message: e.to_string() })?;
    let entries_line = line_of(text, "\"entries\"");
    let shape_err = |message: String| InputError { line: entries_line, message };
    let obj = doc.as_object().ok_or_else(|| InputError { line: 1, message: "expected a JSON object".into() })?;
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| InputError { line: line_of(text, "\"m\""), message: "missing or invalid \"m\"".into() })?
        as usize;
    let rows = obj.get("entries").and_then(Value::as_array).ok_or_else(|| shape_err("missing \"entries\" array".into()))?;
    if m == 0 || rows.is_empty() {
        return Err(shape_err("empty matrix".into()));
    }
    if rows.len() != m {
        return Err(shape_err(format!("\"m\" is {m} but entries has {} rows", rows.len())));
    }
    let mut data = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| shape_err(format!("row {} is not an array", i + 1)))?;
        if *cols.get_or_insert(row.len()) != row.len() || row.is_empty() {
            return Err(shape_err(format!("row {} has {} entries", i + 1, row.len())));
        }
        for (j, q) in row.iter().enumerate() {
            let at = format!("entry ({}, {})", i + 1, j + 1);
            let coeffs = q
                .as_array()
                .filter(|c| c.len() == 4)
                .ok_or_else(|| shape_err(format!("{at} is not a 4-array")))?;
            let mut c = Vec::with_capacity(4);
            for v in coeffs {
                c.push(parse_scalar(v, text, &at)?);
            }
            let [a, b, cc, d]: [Scalar; 4] = c.try_into().expect("four coefficients");
            data.push(Quaternion::new(a, b, cc, d));
        }
    }
    QuaternionMatrix::new(m, cols.unwrap_or(0), data).map_err(|e| shape_err(e.to_string()))
}

pub fn parse_quaternion(s: &str) -> Option<Quaternion> {
    let parts: Vec<Scalar> = s.split(',').map(parse_rational).collect::<Option<_>>()?;
    let [a, b, c, d]: [Scalar; 4] = parts.try_into().ok()?;
    Some(Quaternion::new(a, b, c, d))
}

/// 17 significant digits; plain notation for moderate exponents.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let e = format!("{:.16e}", x);
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=16).contains(&exp) {
        return e;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let body = if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        if frac.is_empty() {
            format!("{int}.0")
        } else {
            format!("{int}.{frac}")
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn json_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(serde_json::from_str(&format_float(x)).expect("valid JSON number"))
}

fn json_quat(q: QuatF) -> Value {
    Value::Array(q.0.iter().map(|&x| json_float(x)).collect())
}

fn json_opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, json_float)
}

fn echo_matrix(a: &QuaternionMatrix) -> Value {
    let rows: Vec<Value> = (0..a.rows())
        .map(|i| {
            Value::Array((0..a.cols()).map(|j| Value::Array(a.get(i, j).0.iter().map(|c| Value::String(c.to_string())).collect())).collect())
        })
        .collect();
    json!({ "m": a.rows(), "entries": rows })
}

fn cert_json(c: &EigenCertificate) -> Value {
    json!({
        "lambda": json_quat(c.lambda),
        "residual": json_opt(c.newton_residual),
        "sigma_min": json_float(c.pencil_sigma_min),
        "vector_residual": json_float(c.vector_residual),
        "jacobian_rank": c.jacobian_rank,
    })
}

fn config_json(cfg: &SolveConfig) -> Value {
    json!({
        "tol_residual": json_float(cfg.tol_residual),
        "tol_newton": json_float(cfg.tol_newton),
        "tol_cluster": json_float(cfg.tol_cluster),
        "n_starts": cfg.n_starts,
        "max_iter": cfg.max_iter,
        "rng_seed": cfg.rng_seed,
        "search_radius_scale": json_float(cfg.search_radius_scale),
        "manifold_samples": cfg.manifold_samples,
    })
}

pub fn report_json(a: &QuaternionMatrix, cfg: &SolveConfig, r: &SpectrumReport, runtime_ms: Option<u128>) -> Value {
    let s = &r.solution;
    let isolated: Vec<Value> = s
        .isolated
        .iter()
        .zip(&s.coverage.basins)
        .map(|(c, &b)| {
            let mut v = cert_json(c);
            v["basin"] = json!(b);
            v
        })
        .collect();
    let fit = r.manifold_fit.as_ref().map_or(Value::Null, |f| {
        json!({
            "affine_dim": f.affine_dim,
            "sphere_center": json_quat(f.center),
            "sphere_radius": json_float(f.radius),
            "max_deviation": json_float(f.max_deviation),
        })
    });
    let mut doc = Map::new();
    doc.insert("input".into(), echo_matrix(a));
    doc.insert("config".into(), config_json(cfg));
    doc.insert("char_system".into(), json!(r.equations));
    doc.insert("isolated".into(), Value::Array(isolated));
    doc.insert(
        "manifold".into(),
        json!({
            "flag": s.manifold_flag,
            "points": s.manifold_points.iter().map(cert_json).collect::<Vec<_>>(),
            "fitted_description": fit,
            "degenerate": s.degenerate.iter().map(cert_json).collect::<Vec<_>>(),
        }),
    );
    doc.insert(
        "bounds".into(),
        json!({
            "sigma_min": json_float(s.annulus.sigma_min),
            "sigma_max": json_float(s.annulus.sigma_max),
            "full_rank": s.annulus.full_rank,
            "alpha": json_float(r.right.alpha),
            "beta": json_float(r.right.beta),
        }),
    );
    doc.insert(
        "right_eigenvalues".into(),
        Value::Array(r.right.eigenvalues.iter().map(|z| json!([json_float(z.re), json_float(z.im)])).collect()),
    );
    doc.insert("domination".into(), json!(r.domination));
    doc.insert("annulus_contains_all".into(), json!(r.annulus_contains_all));
    doc.insert(
        "coverage".into(),
        json!({
            "starts": s.coverage.starts,
            "seeded": s.coverage.seeded,
            "converged": s.coverage.converged,
            "certified": s.coverage.certified,
            "converged_fraction": json_float(s.coverage.converged_fraction()),
            "manifold_candidates": s.coverage.manifold_candidates,
        }),
    );
    if let Some(ms) = runtime_ms {
        doc.insert("runtime_ms".into(), json!(ms as u64));
    }
    Value::Object(doc)
}

pub fn report_text(r: &SpectrumReport) -> String {
    let s = &r.solution;
    let mut out = String::new();
    out.push_str("characteristic system:\n");
    for (i, e) in r.equations.iter().enumerate() {
        out.push_str(&format!("  F{}: {e}\n", i + 1));
    }
    out.push_str(&format!("isolated eigenvalues: {}\n", s.isolated.len()));
    for c in &s.isolated {
        out.push_str(&format!("  {}    sigma_min {:.3e}  vector residual {:.3e}\n", c.lambda.render(), c.pencil_sigma_min, c.vector_residual));
    }
    if s.manifold_flag {
        out.push_str(&format!("manifold: yes, {} certified points\n", s.manifold_points.len()));
        if let Some(f) = &r.manifold_fit {
            out.push_str(&format!(
                "  affine dimension {}, sphere center {}, radius {}\n",
                f.affine_dim,
                f.center.render(),
                crate::quaternion::format_sig(f.radius, 6)
            ));
        }
    } else {
        out.push_str("manifold: no\n");
    }
    if !s.degenerate.is_empty() {
        out.push_str(&format!("degenerate roots: {}\n", s.degenerate.len()));
    }
    out.push_str(&format!(
        "singular value bounds: [{}, {}]\n",
        crate::quaternion::format_sig(s.annulus.sigma_min, 6),
        crate::quaternion::format_sig(s.annulus.sigma_max, 6)
    ));
    out.push_str(&format!(
        "right eigenvalue norms: [{}, {}]\n",
        crate::quaternion::format_sig(r.right.alpha, 6),
        crate::quaternion::format_sig(r.right.beta, 6)
    ));
    out.push_str(&format!("domination: {}\n", r.domination));
    out.push_str(&format!(
        "coverage: {}/{} starts converged, {} certified\n",
        s.coverage.converged, s.coverage.starts, s.coverage.certified
    ));
    out
}

fn signed_perm_text(p: &SignedPerm) -> String {
    let rows: Vec<String> = p.iter().map(|r| format!("[{}]", r.iter().map(|x| format!("{x:2}")).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn read_matrix(path: &PathBuf, square: bool) -> Result<QuaternionMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let a = parse_matrix_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if square && !a.is_square() {
        return Err(format!("{}: line {}: matrix is {}x{}, expected square", path.display(), line_of(&text, "\"entries\""), a.rows(), a.cols()));
    }
    Ok(a)
}

/// Runs the CLI on explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            } else {
                let _ = write!(err, "{rendered}");
                EXIT_INPUT
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn input_err(msg: String) -> (i32, String) {
    (EXIT_INPUT, msg)
}

fn solver_err(e: Error) -> (i32, String) {
    match e {
        Error::NoConvergence => (EXIT_NO_CONVERGENCE, e.to_string()),
        other => (EXIT_INPUT, other.to_string()),
    }
}

fn io_err(e: std::io::Error) -> (i32, String) {
    (EXIT_INPUT, e.to_string())
}

fn execute(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Charpoly { path, full } => cmd_charpoly(&path, full, out),
        Command::Verify { path, lambda, tol, json } => cmd_verify(&path, &lambda, tol, json, out),
        Command::Forms { check, samples, seed } => cmd_forms(check, samples, seed, out),
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(&args.path, true).map_err(input_err)?;
    let cfg = SolveConfig {
        tol_residual: args.tol,
        n_starts: args.starts,
        rng_seed: args.seed,
        max_iter: args.max_iter,
        manifold_samples: args.samples,
        ..SolveConfig::default()
    };
    cfg.validate().map_err(|e| input_err(e.to_string()))?;
    let t = Instant::now();
    let report = left_spectrum_report(&a, &cfg).map_err(solver_err)?;
    let ms = args.timing.then(|| t.elapsed().as_millis());
    if args.text {
        write!(out, "{}", report_text(&report)).map_err(io_err)?;
        if let Some(ms) = ms {
            writeln!(out, "runtime: {ms} ms").map_err(io_err)?;
        }
    } else {
        let doc = report_json(&a, &cfg, &report, ms);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable report")).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_charpoly(path: &PathBuf, full: bool, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(path, true).map_err(input_err)?;
    let mut sys = build_char_system(&a).map_err(solver_err)?;
    if let Some(q) = &sys.trivial {
        writeln!(out, "trivial spectrum {{{q}}}").map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    let label = if sys.equations.len() == 4 { "F" } else { "C" };
    for (i, p) in sys.equations.iter().enumerate() {
        writeln!(out, "{label}{}: {p}", i + 1).map_err(io_err)?;
    }
    if full {
        let det = sys.full_det().map_err(solver_err)?;
        writeln!(out, "det: {det}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(path: &PathBuf, lambda: &str, tol: f64, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(path, true).map_err(input_err)?;
    let q = parse_quaternion(lambda).ok_or_else(|| input_err(format!("cannot parse --lambda \"{lambda}\" as q0,q1,q2,q3")))?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(input_err("--tol must be positive".into()));
    }
    let c = verify_left_eigenvalue(&a, q.to_f64(), tol).map_err(solver_err)?;
    if as_json {
        let mut v = cert_json(&c);
        v["accepted"] = json!(c.accepted);
        v["eigenvector"] = Value::Array(c.eigenvector.iter().map(|&e| json_quat(e)).collect());
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io_err)?;
    } else {
        writeln!(out, "lambda: {}", c.lambda.render()).map_err(io_err)?;
        writeln!(out, "sigma_min: {:.6e}", c.pencil_sigma_min).map_err(io_err)?;
        writeln!(out, "vector_residual: {:.6e}", c.vector_residual).map_err(io_err)?;
        writeln!(out, "jacobian_rank: {}", c.jacobian_rank).map_err(io_err)?;
        writeln!(out, "{}", if c.accepted { "accept" } else { "reject" }).map_err(io_err)?;
    }
    Ok(if c.accepted { EXIT_OK } else { EXIT_REJECT })
}

pub fn cmd_forms(check: bool, samples: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    for f in enumerate_forms() {
        writeln!(out, "form {:2}: H={} J={} K={}", f.index, signed_perm_text(&f.h), signed_perm_text(&f.j), signed_perm_text(&f.k))
            .map_err(io_err)?;
    }
    if !check {
        return Ok(EXIT_OK);
    }
    let results = check_all_forms(samples, seed);
    let passed = results.iter().filter(|c| c.passed()).count();
    for c in results.iter().filter(|c| !c.passed()) {
        writeln!(out, "form {} failed: {c:?}", c.index).map_err(io_err)?;
    }
    writeln!(out, "{passed}/{} pass", results.len()).map_err(io_err)?;
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_INPUT })
}

/// Caps the global rayon pool at QS_THREADS when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("QS_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Entry point for the binary.
pub fn main_exit_code() -> i32 {
    configure_threads();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/3"), Some(ratio(2, 3)));
        assert_eq!(parse_rational("-4/6"), Some(ratio(-2, 3)));
        assert_eq!(parse_rational("0.1"), Some(ratio(1, 10)));
        assert_eq!(parse_rational("-1.25e1"), Some(ratio(-25, 2)));
        assert_eq!(parse_rational("7"), Some(ratio(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn matrix_file_forms() {
        let text = r#"{"m": 2, "entries": [[[1,0,0,0],["0","0","0","1"]],[[0,0,0,1],["3/2",0.5,0,0]]]}"#;
        let a = parse_matrix_file(text).unwrap();
        assert_eq!(a.shape(), (2, 2));
        assert_eq!(a.get(1, 1), &Quaternion::new(ratio(3, 2), ratio(1, 2), ratio(0, 1), ratio(0, 1)));
        // 0.1 as a JSON number is the binary double, not 1/10
        let b = parse_matrix_file(r#"{"m":1,"entries":[[[0.1,0,0,0]]]}"#).unwrap();
        assert_ne!(b.get(0, 0).0[0], ratio(1, 10));
        assert_eq!(b.get(0, 0).0[0], BigRational::from_float(0.1).unwrap());
    }

    #[test]
    fn matrix_file_errors_carry_lines() {
        let bad = "{\n\"m\": 1,\n\"entries\": [[[1, 0, \"1/0\", 0]]]\n}";
        let e = parse_matrix_file(bad).unwrap_err();
        assert_eq!(e.line, 3);
        let broken = "{\n\"m\": 1,\n\"entries\": [[[1, 0, 0 0]]]\n}";
        assert_eq!(parse_matrix_file(broken).unwrap_err().line, 3);
        assert!(parse_matrix_file(r#"{"m":0,"entries":[]}"#).is_err());
        assert!(parse_matrix_file(r#"{"m":2,"entries":[[[1,0,0,0]]]}"#).is_err());
        assert!(parse_matrix_file(r#"{"m":1,"entries":[[[1,0,0]]]}"#).is_err());
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.0000000000000000");
        assert_eq!(format_float(2f64.sqrt()), "1.4142135623730951");
        assert_eq!(format_float(-0.0), "0.0000000000000000");
        assert_eq!(format_float(0.25), "0.25000000000000000");
        assert_eq!(format_float(1e-20), "9.9999999999999995e-21");
        assert_eq!(format_float(0.5e20), "5.0000000000000000e19");
        assert_eq!(json_float(f64::NAN), Value::Null);
        for x in [1.0 / 3.0, -123.456, 6.02e23, 5e-324] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn quaternion_flag() {
        assert_eq!(parse_quaternion("1,0,0,-1/2"), Some(Quaternion::new(ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(-1, 2))));
        assert_eq!(parse_quaternion("1,0,0"), None);
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["quatleft", "bogus"], &mut out, &mut err), EXIT_INPUT);
        assert_eq!(run(["quatleft", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(!out.is_empty());
    }

    #[test]
    fn forms_listing() {
        let mut out = Vec::new();
        assert_eq!(cmd_forms(false, 0, 0, &mut out), Ok(EXIT_OK));
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 48);
        assert!(text.starts_with("form  1: H=[[ 0,-1, 0, 0],[ 1, 0, 0, 0],[ 0, 0, 0,-1],[ 0, 0, 1, 0]]"));
    }
}
