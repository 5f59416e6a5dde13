use std::io::Write;
use std::process::{Command, Output};

use quatleft::cli::{run, EXIT_INPUT, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_REJECT};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatleft")).args(args).output().expect("binary runs")
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("quatleft").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn binary_solves_and_reports_json() {
    let out = bin(&["solve", &data("kappa_pair.json"), "--starts", "100"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["isolated"].as_array().unwrap().len(), 2);
    assert_eq!(v["manifold"]["flag"], Value::Bool(false));
    assert!(v.get("runtime_ms").is_none());
    for key in ["input", "config", "char_system", "bounds", "right_eigenvalues", "coverage", "domination"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn timing_flag_adds_runtime() {
    let (code, out, _) = in_process(&["solve", &data("kappa_pair.json"), "--starts", "50", "--timing"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn text_report_lists_eigenvalues() {
    let (code, out, _) = in_process(&["solve", &data("kappa_triple.json"), "--starts", "100", "--text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("isolated eigenvalues: 3"));
    assert!(out.contains("manifold: no"));
}

#[test]
fn verify_accepts_and_rejects() {
    let out = bin(&["verify", &data("kappa_pair.json"), "--lambda", "1,0,0,-1"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("accept"));
    let out = bin(&["verify", &data("kappa_pair.json"), "--lambda", "1,1,0,0"]);
    assert_eq!(out.status.code(), Some(EXIT_REJECT));
    let (code, out, _) = in_process(&["verify", &data("sphere.json"), "--lambda", "1,0,0,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["accepted"], Value::Bool(true));
    assert_eq!(v["residual"], Value::Null);
}

#[test]
fn verify_rejects_malformed_lambda() {
    let (code, _, err) = in_process(&["verify", &data("kappa_pair.json"), "--lambda", "1,2,x,0"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("--lambda"));
}

#[test]
fn unreachable_tolerance_is_no_convergence() {
    let f = temp_json(r#"{"m": 2, "entries": [[[1, 2, 0, -1], [0, 1, 1, 0]], [[2, 0, -1, 1], [-1, 1, 0, 3]]]}"#);
    let (code, _, err) = in_process(&["solve", f.path().to_str().unwrap(), "--starts", "40", "--tol", "1e-300"]);
    assert_eq!(code, EXIT_NO_CONVERGENCE, "{err}");
}

#[test]
fn input_errors_carry_line_numbers() {
    let f = temp_json("{\n  \"m\": 2,\n  \"entries\": [\n    [[1, 0, 0, 0], [0, 0, 0, 1]],\n    [[0, 0, 0, 1], [1, 0, \"abc\", 0]]\n  ]\n}\n");
    let (code, _, err) = in_process(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 5"), "{err}");

    let f = temp_json("{\n  \"m\": 2,\n  \"entries\": [\n    [[1, 0, 0, 0]]\n  ]\n}\n");
    let (code, _, err) = in_process(&["charpoly", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 3"), "{err}");

    let f = temp_json("{\n  \"m\": 2,\n  \"entries\": [\n");
    let (code, _, err) = in_process(&["charpoly", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line"), "{err}");

    let (code, _, _) = in_process(&["solve", "/nonexistent/matrix.json"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn rational_and_decimal_entries_are_exact() {
    let f = temp_json(r#"{"m": 2, "entries": [[["1/2", 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], ["0.25", 0, 0, "-3e-1"]]]}"#);
    let (code, out, _) = in_process(&["charpoly", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().count() >= 4);
}

#[test]
fn one_by_one_is_trivial() {
    let f = temp_json(r#"{"m": 1, "entries": [[[2, -1, 0, "1/3"]]]}"#);
    let (code, out, _) = in_process(&["charpoly", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("trivial spectrum {"), "{out}");
    let (code, out, _) = in_process(&["solve", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isolated"].as_array().unwrap().len(), 1);
}

#[test]
fn charpoly_full_prints_determinant() {
    let (code, out, _) = in_process(&["charpoly", &data("kappa_pair.json"), "--full"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with('F')).count(), 4);
    assert!(out.lines().any(|l| l.starts_with("det: ")));
}

#[test]
fn forms_listing_and_check() {
    let (code, out, _) = in_process(&["forms"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 48);
    let out = bin(&["forms", "--check", "--samples", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("48/48 pass"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(in_process(&["solve"]).0, EXIT_INPUT);
    assert_eq!(in_process(&["bogus"]).0, EXIT_INPUT);
    assert_eq!(in_process(&["solve", &data("kappa_pair.json"), "--json", "--text"]).0, EXIT_INPUT);
    let (code, out, _) = in_process(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solve"));
}

#[test]
fn solve_rejects_non_square_and_bad_config() {
    let f = temp_json(r#"{"m": 1, "entries": [[[1, 0, 0, 0], [0, 1, 0, 0]]]}"#);
    assert_eq!(in_process(&["solve", f.path().to_str().unwrap()]).0, EXIT_INPUT);
    assert_eq!(in_process(&["solve", &data("kappa_pair.json"), "--tol", "-1"]).0, EXIT_INPUT);
}
