//! Command-line behaviour: documented examples, exit codes and byte-identical
//! output for identical input.

use serde_json::Value;
use std::process::Command;
use wblowup::cli::dispatch;

const TWO_LINES: &str = r#"{"dim":2,"elements":[{"name":"G1","weights":[0,1]},{"name":"G2","weights":[1,0]}]}"#;
const AXES: &str = r#"{"dim":3,"elements":[{"name":"G4","weights":[1,0,1]},{"name":"G5","weights":[0,1,1]}]}"#;
const MISALIGNED: &str = r#"{"dim":3,"elements":[{"name":"A","weights":[1,1,0]},{"name":"B","weights":[1,2,1]}]}"#;
const COLUMNS: &str = r#"{"dim":6,"elements":[{"name":"A","weights":[1,2,1,2,3,0]},{"name":"B","weights":[1,2,1,0,0,0]}]}"#;
const COLUMN_PERSP: &str = r#"{"nest":["A","B"],"h":{"A":4,"B":2}}"#;

fn run(args: &[&str]) -> (i32, String) {
    dispatch(std::iter::once("wblowup").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn check_examples() {
    let (code, v) = run_json(&["check", r#"{"fm":{"s":3,"weights":[1]}}"#]);
    assert_eq!((code, v["passed"].as_bool()), (0, Some(true)));

    let (_, v) = run_json(&["check", AXES]);
    assert_eq!(v["separated"], Value::Bool(false));
    assert_eq!(v["witness"]["zeros"], serde_json::json!([0, 1, 2]));
    let (_, text) = run(&["--format", "text", "check", AXES]);
    assert!(text.starts_with("not separated"));

    let (_, v) = run_json(&["check", MISALIGNED]);
    assert_eq!(v["uniformly_aligned"], Value::Bool(false));
}

#[test]
fn nests_example() {
    let (code, v) = run_json(&["nests", TWO_LINES]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 4);
    assert_eq!(v["non_empty_flags"], 5);
    assert_eq!(v["enumeration_agrees"], Value::Bool(true));
}

#[test]
fn chart_commands_round_trip() {
    let (code, v) = run_json(&["chart", COLUMNS, COLUMN_PERSP, "--point", r#"{"coords":[1,"1/2",2,3,"1/3",-1]}"#, "--inverse"]);
    assert_eq!(code, 0);
    let point = serde_json::to_string(&v).unwrap();
    let (_, y) = run_json(&["chart", COLUMNS, COLUMN_PERSP, "--point", &point]);
    assert_eq!(y["coords"], serde_json::json!(["1", "1/2", "2", "3", "1/3", "-1"]));

    let (_, text) = run(&["--format", "text", "blowdown", COLUMNS, COLUMN_PERSP, "--point", r#"[1,1,1,1,1,1]"#]);
    assert!(text.contains("x5 = y5^3 = 1"));
    let (_, cs) = run_json(&["control-set", COLUMNS, COLUMN_PERSP, "--point", "[1,1,0,1,0,1]"]);
    assert_eq!(cs["control_set"], serde_json::json!(["A", "B"]));
    let (_, t) = run_json(&["transition", COLUMNS, COLUMN_PERSP, COLUMN_PERSP, "--point", "[1,2,3,4,5,6]"]);
    assert_eq!(t["coords"], serde_json::json!(["1", "2", "3", "4", "5", "6"]));
}

#[test]
fn weak_singularity_and_projective_commands() {
    let bs = r#"{"dim":2,"elements":[{"name":"A","weights":[1,2]},{"name":"B","weights":[0,2]}]}"#;
    let persp = r#"{"nest":["A","B"],"h":{"A":0,"B":1}}"#;
    let (_, v) = run_json(&["weak-singular", bs, persp, "--point", "[0,0]"]);
    assert_eq!(v["weak_singularity"], Value::Bool(true));
    let (_, v) = run_json(&["proj", "singular", "--weights", "1,2", "--normal", "0,-3"]);
    assert_eq!(v["singular"], Value::Bool(true));
    let (_, v) = run_json(&["proj", "canonicalize", "--weights", "1,2", "--normal", "2,4"]);
    assert_eq!(v["class"], serde_json::json!(["1", "1"]));
}

#[test]
fn fm_commands() {
    let nest = "[[1,2,3],[5,6],[7,8,9],[5,6,7,8,9]]";
    let (_, v) = run_json(&["fm", "forest", "--s", "9", "--nest", nest, "--roots", "6,2,7,7"]);
    assert_eq!(v["parent"], serde_json::json!({"1": 2, "3": 2, "5": 6, "6": 7, "8": 7, "9": 7}));

    let config = "[[0,0],[1,0],[0,1]]";
    let (code, point) = run(&["fm", "chart", config, "--weights", "1,2", "--nest", "[[1,2],[1,2,3]]"]);
    assert_eq!(code, 0);
    let (_, back) = run_json(&["fm", "blowdown", &point]);
    let pts: Vec<Vec<f64>> = serde_json::from_value(back["points"].clone()).unwrap();
    let expected = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
    for (a, b) in pts.iter().zip(expected) {
        assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    }
    let curves = r#"[[[[0,"0"]]],[[[2,"1"]]],[[[1,"1"]]]]"#;
    let (_, v) = run_json(&["fm", "limit", curves, "--weights", "1"]);
    assert_eq!(v["nest"], serde_json::json!([[1, 2], [1, 2, 3]]));
    let (code, text) = run(&["--format", "text", "fm", "screens", &point]);
    assert_eq!(code, 0);
    assert!(text.contains("[12]"));
}

#[test]
fn jet_commands() {
    let limit = r#"{"polynomial":{"nvars":1,"terms":[[[3],"1"]]},"x1":[[]],"x2":[[[1,"1"]]]}"#;
    let (_, v) = run_json(&["jet", "limit", limit]);
    assert_eq!((v["dy"].as_str(), v["dp"][0].as_str(), v["dh"][0].as_str()), (Some("3"), Some("6"), Some("6")));
    assert_eq!(v["holonomic"]["derived"], Value::Bool(true));
    assert_eq!(v["holonomic"]["literal"], Value::Bool(false));

    let blown = serde_json::to_string(&v).unwrap();
    let (_, lit) = run_json(&["jet", "holonomic", &blown]);
    assert_eq!(lit["holonomic"], Value::Bool(false));
    assert!(lit["warning"].as_str().unwrap().contains("1/2"));
    let (_, der) = run_json(&["jet", "holonomic", &blown, "--mode", "derived"]);
    assert_eq!(der["holonomic"], Value::Bool(true));

    let pair = r#"{"first":{"x":[0],"y":0,"p":[0],"h":[0]},"second":{"x":[2],"y":8,"p":[12],"h":[12]}}"#;
    let (_, chart) = run_json(&["jet", "chart", pair]);
    let (_, back) = run_json(&["jet", "blowdown", &serde_json::to_string(&chart).unwrap()]);
    assert_eq!(back["second"]["y"], "8");
    let (_, off) = run_json(&["jet", "offsets", pair]);
    assert_eq!(off["dy"], "8");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nests", "{not json"]).0, 2);
    assert_eq!(run(&["nests", "/nonexistent/file.json"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, v) = run_json(&["chart", COLUMNS, COLUMN_PERSP, "--point", "[1,1,-1,1,1,1]", "--inverse"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "outside_domain");
    let (code, v) = run_json(&["tableau", AXES, "--nest", "G4,G5"]);
    assert_eq!(code, 3);
    assert!(v["error"]["message"].as_str().is_some());
    assert_eq!(run(&["verify", "nests", "--seed", "3"]).0, 0);
}

#[test]
fn identical_input_gives_identical_output() {
    let a = run(&["fm", "chart", "[[0,0],[0.3,0.1],[1,2]]", "--weights", "2,3", "--nest", "[[1,2],[1,2,3]]"]);
    let b = run(&["fm", "chart", "[[0,0],[0.3,0.1],[1,2]]", "--weights", "2,3", "--nest", "[[1,2],[1,2,3]]"]);
    assert_eq!(a, b);
    let (_, v) = run_json(&["nests", TWO_LINES]);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wblowup");
    let out = Command::new(bin).args(["--format", "text", "nests", TWO_LINES]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("4 nests"));
    let out = Command::new(bin).args(["check", "{"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
