use std::process::{Command, Output};

use serde_json::Value;
use sturmian_apr::{BinaryWord, FieldElement};

fn apr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apr")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = apr(&all);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

const GOLDEN: [&str; 2] = ["--slope", "[0;(1)]"];

#[test]
fn golden_intercept_returns() {
    let v = json(&["apr", GOLDEN[0], GOLDEN[1], "--intercept", "(3-sqrt(5))/2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(strings(&v["apr"]), ["0", "1", "01", "10", "001"]);
    assert_eq!(v["cardinality"]["count"], 5);
    assert_eq!(v["counts"]["n_apr"], 5);

    let out = apr(&["apr", GOLDEN[0], GOLDEN[1], "--intercept", "(3-sqrt(5))/2"]);
    let table = stdout(&out);
    assert!(table.contains("APR ( 5)  0 1 01 10 001"), "{table}");
    assert!(table.contains("0.381966011250"), "{table}");
}

#[test]
fn zero_intercept_is_a_math_error() {
    let out = apr(&["apr", GOLDEN[0], GOLDEN[1], "--intercept", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("infinite for zero intercept"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["apr", "--slope", "[0;1,1]", "--intercept", "1/3"],
        vec!["apr", "--slope", "[0;(1)]", "--intercept", "1"],
        vec!["apr", "--slope", "[0;(1)]", "--intercept", "sqrt(2)-1"],
        vec!["apr", "--slope", "0.618", "--intercept", "1/3"],
        vec!["itineraries", "--slope", "[0;(1)]", "--interval", "(0,1/2)"],
        vec!["itineraries", "--slope", "[0;(1)]", "--interval", "[1/2,1/3)"],
        vec!["delta-table", "--slope", "[0;(1)]", "--count", "0"],
        vec!["verify", "--suite", "nonsense"],
    ] {
        let out = apr(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn json_round_trips() {
    let text = stdout(&apr(&["apr", "--slope", "[0;2,(1,3)]", "--intercept", "2/7", "--format", "json"]));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    // exact values re-render identically through the library parsers
    for key in ["alpha", "intercept"] {
        let s = v[key].as_str().unwrap();
        assert_eq!(s.parse::<FieldElement>().unwrap().to_string(), s);
    }
    for w in strings(&v["apr"]) {
        assert_eq!(w.parse::<BinaryWord>().unwrap().to_string(), w);
    }
    let value = v["indices"]["value"].as_str().unwrap();
    assert_eq!(value.parse::<FieldElement>().unwrap().to_string(), value);
}

#[test]
fn table_and_json_agree() {
    let args = ["apr", "--slope", "[0;1,3,(2)]", "--intercept", "1/5"];
    let v = json(&args);
    let table = stdout(&apr(&args));
    for key in ["r_set", "r_prime_set", "apr"] {
        assert!(table.contains(&strings(&v[key]).join(" ")), "{key}: {table}");
    }
    let case = v["cardinality"]["case"].as_str().unwrap();
    assert!(table.contains(&format!("case {case}, count {}", v["cardinality"]["count"])), "{table}");
}

#[test]
fn out_file_receives_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta.json");
    let out = apr(&["delta-table", GOLDEN[0], GOLDEN[1], "--count", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn golden_delta_column() {
    let v = json(&["delta-table", GOLDEN[0], GOLDEN[1], "--count", "5"]);
    let values: Vec<String> = v["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap().into()).collect();
    assert_eq!(values, ["1", "(-1+sqrt(5))/2", "(3-sqrt(5))/2", "-2+sqrt(5)", "(7-3*sqrt(5))/2"]);
    assert_eq!((&v["rows"][0]["k"], &v["rows"][0]["s"]), (&Value::from(0), &Value::from(1)));
    assert_eq!(v["strictly_decreasing"], true);
    let table = stdout(&apr(&["delta-table", "--slope", "[0;3,(1,2)]"]));
    assert!(table.contains("strictly decreasing: yes"));
}

#[test]
fn four_piece_golden_interval() {
    let v = json(&["itineraries", GOLDEN[0], GOLDEN[1], "--interval", "[sqrt(5)-2, 3-sqrt(5))"]);
    let pieces = v["pieces"].as_array().unwrap();
    let rows: Vec<(u64, &str)> =
        pieces.iter().map(|p| (p["return_time"].as_u64().unwrap(), p["itinerary"].as_str().unwrap())).collect();
    assert_eq!(rows, [(1, "0"), (3, "010"), (2, "01"), (2, "10")]);
    assert_eq!(v["induced"]["intervals"], 3);
    assert_eq!(v["induced"]["permutation"], "perm321");
    assert_eq!(v["kac_sum"], "1");
}

#[test]
fn whole_interval_and_delta_interval() {
    let v = json(&["itineraries", GOLDEN[0], GOLDEN[1], "--interval", "[0,1)"]);
    assert_eq!(strings(&v["itineraries"]), ["0", "1"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
    let v = json(&["itineraries", "--slope", "[0;2,(1,3)]", "--beta-at-delta", "3"]);
    assert_eq!(v["itineraries"].as_array().unwrap().len(), 2);
}

#[test]
fn step_cap_is_reported() {
    let out = apr(&["itineraries", GOLDEN[0], GOLDEN[1], "--interval", "[0,1/1000)", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap of 3"), "{}", stderr(&out));
}

#[test]
fn verify_golden_table() {
    let out = apr(&["verify", "--suite", "table1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("table1          PASS  5 cases"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "cardinality", "--suite", "dichotomy", "--seed", "9", "--format", "json"];
    let first = stdout(&apr(&args));
    assert_eq!(first, stdout(&apr(&args)));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn injected_bug_fails_with_counterexample() {
    let out = apr(&["verify", "--suite", "table1", "--inject-lex-bug"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("counterexample: --slope \"[0;(1)]\" row 2"), "{text}");
    let out = apr(&["verify", "--suite", "oracle", "--inject-lex-bug", "--max-prefix", "30", "--word-len", "20000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("counterexample: --slope"));
}
