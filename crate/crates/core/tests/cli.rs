use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn goint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goint"))
        .args(args)
        .env_remove("GOINT_DEFAULT_GRID")
        .output()
        .expect("binary runs")
}

fn with_input(command: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![command, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    goint(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn integrate_possibility_fixture() {
    let out = with_input("integrate", "possibility_sugeno.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["value"], 0.5);
    assert_eq!(doc["kind"], "sugeno");
    assert_eq!(doc["profile"], serde_json::json!([[0.3, 1.0], [0.9, 0.5]]));
    assert!(doc["grid_resolution"].is_null());
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["value", "kind", "profile", "grid_resolution"]);
}

#[test]
fn integrate_csv() {
    let out = with_input(
        "integrate",
        "possibility_go_sweep.json",
        &["--format", "csv"],
    );
    assert_eq!(stdout(&out), "value,kind,grid_resolution\n0.2025,go,\n");
}

#[test]
fn integrate_error_exit_codes() {
    let out = with_input("integrate", "table_missing_empty.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("normalization"), "{}", stderr(&out));

    let out = goint(&["integrate", "--input", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(3));

    let out = with_input("integrate", "malformed.json", &[]);
    assert_eq!(out.status.code(), Some(3));

    // a document without an integral is well-formed but incomplete
    let out = with_input("integrate", "compare_empty.json", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_rows() {
    let out = with_input("compare", "possibility_sugeno.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "integral,operators,value\n\
         sugeno,,0.5\n\
         choquet,,0.6\n\
         t_normed,product,0.45\n\
         go,power_product:p=2;max,0.2025\n"
    );
    let out = with_input("compare", "compare_empty.json", &[]);
    assert_eq!(stdout(&out), "integral,operators,value\n");
    let out = with_input(
        "compare",
        "compare_unit_function.json",
        &["--format", "json"],
    );
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 5);
    for row in rows.as_array().unwrap() {
        assert_eq!(row["value"], 1.0, "{row}");
    }
}

#[test]
fn axioms_exit_codes() {
    let out = goint(&["axioms", "--t-overlap", "min", "--grid", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let out = goint(&["axioms", "--t-overlap", "mean"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pass"], false);

    let out = goint(&["axioms", "--t-norm", "power_product:p=2"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    let axioms: Vec<&str> = report["counterexamples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert!(axioms.contains(&"unit"), "{axioms:?}");

    assert_eq!(
        goint(&["axioms", "--t-overlap", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(goint(&["axioms"]).status.code(), Some(1));
    assert_eq!(
        goint(&["axioms", "--gpg", "prob_sum", "--arity", "3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(goint(&["axioms", "--gpg", "mean_n"]).status.code(), Some(2));
    assert_eq!(
        goint(&[
            "axioms",
            "--gpg-functional",
            "breakpoint_mean",
            "--trials",
            "100"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        goint(&["axioms", "--t-overlap", "min", "--format", "csv"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn properties_suites() {
    let out = with_input(
        "properties",
        "table_go.json",
        &["--suite", "theorem1", "--trials", "1000", "--seed", "7"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["violation_count"], 0);
    assert_eq!(report["trials"], 1000);
    assert_eq!(report["seed"], 7);

    let out = with_input("properties", "problem1_sugeno.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"], "no-counterexample-within-budget");

    let out = with_input("properties", "problem1_broken.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["outcome"], "counterexample-found");
    assert!(!report["violations"].as_array().unwrap().is_empty());

    let out = goint(&["properties", "--suite", "usc", "--trials", "300"]);
    assert_eq!(out.status.code(), Some(0));

    let out = with_input(
        "properties",
        "distorted_t_normed.json",
        &["--trials", "300"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 2);

    // homogeneity of a Choquet integral needs an explicit operator
    let out = with_input(
        "properties",
        "additive_choquet.json",
        &["--suite", "homogeneity"],
    );
    assert_eq!(out.status.code(), Some(1));
    let out = goint(&["properties", "--suite", "theorem1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn property_violations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // BreakpointMean is not a conforming functional, so the checked config refuses it
    std::fs::write(
        &path,
        r#"{"space": {"points": ["a"]}, "integral": {"kind": "go", "overlap": {"name": "min"}, "gpg": {"name": "breakpoint_mean"}}}"#,
    )
    .unwrap();
    let out = goint(&[
        "properties",
        "--suite",
        "theorem1",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // the Choquet integral is not comonotone-maxitive
    let out = with_input(
        "properties",
        "additive_choquet.json",
        &["--suite", "comonotone", "--trials", "200"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn sweep_series() {
    let out = with_input("sweep", "possibility_go_sweep.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,value");
    assert_eq!(lines.len(), 27);
    assert!(lines.contains(&"2,0.2025"));
    let reversed = with_input("sweep", "possibility_go_sweep_reversed.json", &[]);
    assert_eq!(reversed.stdout, out.stdout);
}

#[test]
fn single_step_sweep_matches_integrate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.json");
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("lambda_kernel.json")).unwrap())
            .unwrap();
    doc["sweep"] =
        serde_json::json!({"parameter": "function.b", "from": 0.5, "to": 0.5, "steps": 1});
    std::fs::write(&path, doc.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let sweep = goint(&["sweep", "--input", p, "--format", "json"]);
    let integrate = goint(&["integrate", "--input", p]);
    assert_eq!(json(&sweep)[0]["value"], json(&integrate)["value"]);
}

#[test]
fn output_is_deterministic_and_file_output_matches() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let args = ["--suite", "theorem1", "--trials", "300", "--seed", "5"];
    let first = with_input("properties", "table_go.json", &args);
    let second = with_input("properties", "table_go.json", &args);
    assert_eq!(first.stdout, second.stdout);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", target.to_str().unwrap()]);
    let out = with_input("properties", "table_go.json", &with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), first.stdout);

    let out = goint(&[
        "integrate",
        "--input",
        fixture("table_go.json").to_str().unwrap(),
        "--output",
        "/nonexistent/dir/out.json",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn grid_environment_override() {
    let path = fixture("lambda_kernel.json");
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_goint"))
            .args(["integrate", "--input", path.to_str().unwrap()])
            .env("GOINT_DEFAULT_GRID", value)
            .output()
            .unwrap()
    };
    let out = run("512");
    assert_eq!(json(&out)["grid_resolution"], 512);
    assert_eq!(run("lots").status.code(), Some(1));
    let out = with_input("integrate", "lambda_kernel.json", &["--grid", "1024"]);
    assert_eq!(json(&out)["grid_resolution"], 1024);
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(goint(&["--help"]).status.code(), Some(0));
    assert_eq!(goint(&["--version"]).status.code(), Some(0));
    assert_eq!(goint(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(goint(&["integrate", "--seed", "x"]).status.code(), Some(1));
}
