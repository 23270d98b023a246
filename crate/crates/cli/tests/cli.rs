//! End-to-end checks of the command-line surface: output formats, exit
//! codes, and file output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derangements"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn table_csv_lists_derangement_numbers() {
    let output = run(&["table", "--family", "sep", "--r", "0", "--n-max", "4"]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "n,value,method\n0,1,formula\n1,0,formula\n2,1,formula\n3,2,formula\n4,9,formula\n"
    );
}

#[test]
fn table_bfile_has_bare_pairs() {
    let output = run(&[
        "table", "--family", "sep", "--r", "0", "--n-max", "4", "--format", "bfile",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "0 1\n1 0\n2 1\n3 2\n4 9\n");
}

#[test]
fn table_json_uses_decimal_strings() {
    let output = run(&[
        "table",
        "--family",
        "block-k-par",
        "--r",
        "2",
        "--k",
        "1",
        "--i",
        "1",
        "--n-max",
        "3",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed["family"], "block-k-par");
    assert_eq!(parsed["r"], "2");
    assert_eq!(parsed["k"], "1");
    assert_eq!(parsed["i"], "1");
    assert_eq!(parsed["method"], "formula");
    let values = parsed["values"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    for row in values {
        assert!(row["n"].is_string());
        assert!(row["value"].is_string());
    }
}

#[test]
fn table_methods_produce_identical_values() {
    let mut seen = Vec::new();
    for method in ["formula", "recurrence", "egf", "oracle"] {
        let output = run(&[
            "table",
            "--family",
            "block-par",
            "--r",
            "2",
            "--u",
            "1",
            "--i",
            "0",
            "--n-max",
            "5",
            "--format",
            "bfile",
            "--method",
            method,
        ]);
        assert!(output.status.success(), "method {method}");
        seen.push(stdout(&output));
    }
    assert!(seen.windows(2).all(|pair| pair[0] == pair[1]));
}

#[test]
fn split_prints_before_and_after() {
    let output = run(&["split", "(1 3 2 4)", "--r", "2"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "input: (1 3 2 4)\nsplit: (1 3)(2 4)\n");
}

#[test]
fn fiber_lists_members_and_formula() {
    let output = run(&["fiber", "(1)(2)", "--r", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("formula:   2"));
    assert!(text.contains("members:   2"));
    assert!(text.contains("(1 2)"));

    let filtered = run(&["fiber", "(1)(2)", "--r", "2", "--condition", "k=1"]);
    assert!(filtered.status.success());
    assert!(stdout(&filtered).contains("formula:   1"));
}

#[test]
fn verify_small_grid_exits_clean() {
    let output = run(&["verify", "--suite", "sign", "--r-max", "4", "--n-max", "12"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("0 failed"));
}

#[test]
fn verify_writes_json_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let output = run(&[
        "verify",
        "--suite",
        "partition",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed[0]["suite"], "partition");
    assert_eq!(parsed[0]["failed"], "0");
}

#[test]
fn usage_errors_exit_with_two() {
    // Unknown family.
    let output = run(&["table", "--family", "nonsense"]);
    assert_eq!(output.status.code(), Some(2));
    // Unparseable permutation.
    let output = run(&["split", "left-handed", "--r", "1"]);
    assert_eq!(output.status.code(), Some(2));
    // Front block larger than the permutation.
    let output = run(&["split", "(1 2)", "--r", "5"]);
    assert_eq!(output.status.code(), Some(2));
    // Unknown suite.
    let output = run(&["verify", "--suite", "everything"]);
    assert_eq!(output.status.code(), Some(2));
    // Missing required argument.
    let output = run(&["table"]);
    assert_eq!(output.status.code(), Some(2));
    // Fiber of a non-separated permutation.
    let output = run(&["fiber", "(1 2 3)", "--r", "2"]);
    assert_eq!(output.status.code(), Some(2));
    // Parameters outside the domain.
    let output = run(&["table", "--family", "sep", "--r", "1", "--u", "2"]);
    assert_eq!(output.status.code(), Some(2));
}
