use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idensity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (v, out.status.code().unwrap())
}

#[test]
fn k_code_of_five() {
    let (v, code) = json(&["codes", "k", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["output"], "001101");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["all_passed"], true);
    assert!(v["wall_time_ms"].is_null());
}

#[test]
fn timing_is_opt_in() {
    let (v, _) = json(&["--timing", "codes", "pair", "--x", "1", "--y", "1"]);
    assert!(v["wall_time_ms"].is_u64());
    assert_eq!(v["results"]["output"], "4");
}

#[test]
fn density_of_evens() {
    let (v, code) = json(&["density", "--set", "evens", "--checkpoints", "1,2,10"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["results"]["values"],
        serde_json::json!(["1", "1/2", "1/2"])
    );
    assert_eq!(v["results"]["observed_sup"], "1");
}

#[test]
fn csv_has_header_and_rows() {
    let out = run(&[
        "--format",
        "csv",
        "density",
        "--set",
        "odds",
        "--checkpoints",
        "4,8",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "checkpoint,density\n4,1/2\n8,1/2\n");
}

#[test]
fn wct_oracle_passes() {
    let (v, code) = json(&["wct", "--set", "seed:42", "--nmax", "5", "--oracle-trace"]);
    assert_eq!(code, 0);
    let per_n = v["results"]["per_n"].as_array().unwrap();
    assert_eq!(per_n.len(), 5);
    assert!(per_n.iter().all(|r| r["guess_is_true_trace"] == true));
}

#[test]
fn wct_csv_is_the_injection() {
    let out = run(&[
        "--format",
        "csv",
        "wct",
        "--set",
        "full",
        "--nmax",
        "3",
        "--oracle-trace",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,g(j)"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn inconsistent_introreduce_exits_one() {
    let (v, code) = json(&["introreduce", "--codes", "1,2"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["rejected"]["position"], 0);
}

#[test]
fn bad_input_exits_two() {
    let out = run(&["density", "--set", "nonsense", "--checkpoints", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn horizon_is_enforced() {
    let out = run(&[
        "--horizon",
        "100",
        "density",
        "--set",
        "evens",
        "--checkpoints",
        "101",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weakrep_validate_reports_bullets() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "0,7,2\n0,7,3\n").unwrap();
    let (v, code) = json(&[
        "weakrep",
        "validate",
        "--file",
        good.to_str().unwrap(),
        "--table-horizon",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 4);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1,7,3\n").unwrap();
    let (v, code) = json(&[
        "weakrep",
        "validate",
        "--file",
        bad.to_str().unwrap(),
        "--table-horizon",
        "3",
    ]);
    assert_eq!(code, 1);
    let failed: Vec<_> = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed, ["downward-closure"]);
}

#[test]
fn tree_decode_recovers_prefix() {
    let (v, code) = json(&[
        "tree-decode",
        "--set",
        "seed:11",
        "--q",
        "3",
        "--depth",
        "32",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["true_prefix_found"], true);
}

#[test]
fn graph_and_hits() {
    let (v, code) = json(&["graph", "--f", "list:0,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["members"], serde_json::json!(["0", "4", "12"]));
    let (v, code) = json(&[
        "hits",
        "--sampler",
        "identity",
        "--f",
        "list:0,5,2,100",
        "--q",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["hits"], serde_json::json!([0]));
}
