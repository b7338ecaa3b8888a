use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    root().join("tests/data").join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_buchi"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn validate(report: &Value) {
    let sub = report["subcommand"].as_str().expect("subcommand field");
    let path = root().join("schemas").join(format!("{sub}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(report) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{sub} report violates its schema:\n{}", msgs.join("\n"));
    };
}

/// Runs, expects exit 0, validates the schema and returns `outputs`.
fn ok(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).expect("stdout is JSON");
    validate(&v);
    v["outputs"].clone()
}

fn without_timing(stdout: &str) -> Value {
    let mut v: Value = serde_json::from_str(stdout).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn corpus() -> Vec<Vec<String>> {
    let classic = data("classic.json");
    let squares = data("squares.json");
    let shifted = data("shifted_squares.json");
    let linear = data("linear.json");
    let diff = data("difference_of_squares.json");
    let sq = data("square_of_linear.json");
    let cubic = data("cubic_degenerate.json");
    let constant = data("constant.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["powerful", "x^2*(x-1)^3", "--k", "2"],
        vec!["powerful", "(x^2+1)/(x-3)", "--k", "1"],
        vec!["classify", &diff],
        vec!["classify", &sq],
        vec!["classify", &constant],
        vec!["census", &sq, "--lambda-range", "0..9", "--mu", "2"],
        vec!["census", &diff, "--lambda-range", "-5..5", "--mu", "2", "--include-infinity"],
        vec!["census", &cubic, "--lambda-range", "-3..3", "--mu", "3"],
        vec!["locus", &diff, "--n", "2"],
        vec!["locus", "t^2+x", "--n", "2"],
        vec!["locus", "(t+x)^2*(t+1)", "--n", "2"],
        vec!["sequence", "verify", &classic, "--n", "2"],
        vec!["sequence", "to-form", &classic, "--n", "2"],
        vec!["sequence", "to-form", &squares, "--n", "2"],
        vec!["sequence", "to-form", &shifted, "--n", "2"],
        vec!["sequence", "to-form", &linear, "--n", "2"],
        vec!["search-int", "--x1", "1..50", "--x2", "1..50", "--min-len", "4"],
        vec!["bound", "--n", "2", "--g", "0"],
        vec!["bound", "--n", "2..4", "--g", "0..2"],
        vec!["charp-example", "--p", "3", "--e", "2"],
        vec!["lemma-linear", "--c", "(x^3+1)/x"],
        vec!["lemma-linear", "--c", "x/(x^2-2)"],
        vec!["zeuthen", "--u", "t^2", "--v", "t^3"],
        vec!["harness", "--n", "2", "--trials", "4", "--seed", "3", "--lambda-range", "-10..10"],
    ];
    cases
        .into_iter()
        .map(|c| c.into_iter().map(String::from).collect())
        .collect()
}

#[test]
fn corpus_runs_clean_and_validates() {
    for case in corpus() {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        ok(&args);
    }
}

#[test]
fn deterministic_reports() {
    for case in corpus() {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout), "{args:?}");
    }
}

#[test]
fn bound_example() {
    let out = ok(&["bound", "--n", "2", "--g", "0"]);
    assert_eq!(out["M"], 240);
    assert_eq!(out["contradiction"], true);
    let grid = ok(&["bound", "--n", "2..6", "--g", "0..3"]);
    let rows = grid["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r["contradiction"] == true));
    assert_eq!(ok(&["bound", "--n", "3", "--g", "0"])["M"], 4032);
}

#[test]
fn powerful_example() {
    let out = ok(&["powerful", "x^2*(x-1)^3", "--k", "2"]);
    assert_eq!(out["powerful"], true);
    assert_eq!(out["profile"], serde_json::json!([["x", 2], ["x-1", 3]]));
    let out = ok(&["powerful", "x^2*(x-1)^3", "--k", "3"]);
    assert_eq!(out["powerful"], false);
}

#[test]
fn search_example() {
    let out = ok(&["search-int", "--x1", "1..50", "--x2", "1..50", "--min-len", "4"]);
    let seqs = out["sequences"].as_array().unwrap();
    assert!(seqs
        .iter()
        .any(|s| s["roots"] == serde_json::json!([6, 23, 32, 39]) && s["trivial"] == false));
}

#[test]
fn sequence_fit() {
    let out = ok(&["sequence", "to-form", &data("classic.json"), "--n", "2"]);
    assert_eq!(out["coeffs"], serde_json::json!(["-455", "490"]));
    let out = ok(&["sequence", "to-form", &data("shifted_squares.json"), "--n", "2"]);
    assert_eq!(out["coeffs"], serde_json::json!(["x^2", "2*x"]));
    let out = ok(&["sequence", "verify", &data("linear.json"), "--n", "2"]);
    assert_eq!(out["buchi"], false);
}

#[test]
fn census_and_locus() {
    let out = ok(&["census", &data("difference_of_squares.json"), "--lambda-range", "-5..5", "--mu", "2"]);
    assert_eq!(out["powerful_count"], 1);
    assert_eq!(out["powerful"][0]["point"], "[0:1]");
    assert_eq!(out["verdict"], "CONSISTENT");
    let out = ok(&["locus", &data("difference_of_squares.json"), "--n", "2"]);
    assert_eq!(out["rational_points"], serde_json::json!(["0"]));
    let out = ok(&["locus", "t^2+x", "--n", "2"]);
    assert_eq!(out["rational_points"], serde_json::json!([]));
}

#[test]
fn geometry_examples() {
    let z = ok(&["zeuthen", "--u", "t^2+t", "--v", "t^3"]);
    assert_eq!((z["lhs"].as_i64(), z["rhs"].as_i64(), z["equal"].as_bool()), (Some(2), Some(2), Some(true)));
    let l = ok(&["lemma-linear", "--c", "x^2"]);
    assert_eq!(l["points"], serde_json::json!(["[0:1]"]));
}

#[test]
fn harness_records_seed() {
    let r = run(&["harness", "--n", "2", "--trials", "2", "--lambda-range", "-3..3"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["seed"], 0);
    let r = run(&["harness", "--n", "3", "--trials", "2", "--seed", "9", "--lambda-range", "-3..3"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["outputs"]["infinity_always_powerful"], true);
}

#[test]
fn usage_errors_exit_one() {
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["bogus"],
        vec!["bound", "--n"],
        vec!["bound", "--n", "1"],
        vec!["powerful", "x^2+", "--k", "2"],
        vec!["powerful", "0", "--k", "2"],
        vec!["census", "t^2+x", "--lambda-range", "5..1"],
        vec!["locus", "(t+x)^2", "--n", "2"],
        vec!["charp-example", "--p", "2"],
        vec!["charp-example", "--p", "9"],
        vec!["lemma-linear", "--c", "5"],
        vec!["zeuthen", "--u", "1", "--v", "t"],
        vec!["sequence", "verify", "/nonexistent/file.json", "--n", "2"],
        vec!["search-int", "--x1", "-3..3", "--x2", "1..2"],
        vec!["harness", "--n", "1"],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["census", "--help"]).code, 0);
}
