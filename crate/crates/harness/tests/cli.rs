use std::path::Path;
use std::process::{Command, Output};

const HAMMING_CHAIN: &str = r#"{
  "field": {"q": 2},
  "weight": {"kind": "hamming"},
  "poset": {"elements": 2, "cover": [[1, 2]]},
  "labeling": [1, 1],
  "code": {"kind": "list", "words": [[0, 0], [1, 1]]}
}"#;

const ONE_BIT: &str = r#"{
  "field": {"q": 2},
  "weight": {"kind": "hamming"},
  "poset": {"elements": 1},
  "labeling": [1],
  "code": {"kind": "list", "words": [[0], [1]]}
}"#;

fn wpbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpbm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn queries_on_a_chain_code() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HAMMING_CHAIN);
    let o = wpbm(&["weight", &a, "--vector", "0,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"weight":2}"#);
    assert_eq!(stdout(&wpbm(&["distance", &a, "--u", "1|0", "--v", "0|0"])).trim(), r#"{"distance":1}"#);
    assert_eq!(stdout(&wpbm(&["mindist", &a])).trim(), r#"{"min_distance":2,"size":2}"#);
    assert_eq!(stdout(&wpbm(&["covering-radius", &a])).trim(), r#"{"covering_radius":1}"#);
    assert_eq!(stdout(&wpbm(&["ball", &a, "--center", "0,0", "--radius", "1", "--count-only"])).trim(), r#"{"count":2}"#);
    assert_eq!(wpbm(&["cosets", &a]).status.code(), Some(2));
    let g = write(dir.path(), "g.json", &HAMMING_CHAIN.replace(r#""kind": "list", "words""#, r#""kind": "generator", "rows""#).replace("[[0, 0], [1, 1]]", "[[1, 1]]"));
    let cosets = wpbm(&["cosets", &g]);
    assert!(cosets.status.success(), "{}", String::from_utf8_lossy(&cosets.stderr));
    assert_eq!(stdout(&cosets).lines().count(), 2);
}

#[test]
fn construct_direct_sum_matches_the_worked_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HAMMING_CHAIN);
    let b = write(dir.path(), "b.json", ONE_BIT);
    let out = dir.path().join("sum.json");
    let o = wpbm(&["construct", "direct-sum", &a, &b, "--order", "disjoint", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&wpbm(&["mindist", out.to_str().unwrap()])).trim(), r#"{"min_distance":1,"size":4}"#);
    let o = wpbm(&["construct", "direct-sum", &a, &b, "--order", "linear"]);
    let sum = write(dir.path(), "lin.json", &stdout(&o));
    assert_eq!(stdout(&wpbm(&["mindist", &sum])).trim(), r#"{"min_distance":2,"size":4}"#);
}

#[test]
fn construct_rejects_bad_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HAMMING_CHAIN);
    assert_eq!(wpbm(&["construct", "puncture", &a, "--block", "0"]).status.code(), Some(2));
    assert_eq!(wpbm(&["construct", "plotkin", &a]).status.code(), Some(2));
    assert!(wpbm(&["construct", "puncture", &a, "--block", "2"]).status.success());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(wpbm(&["mindist", &bad]).status.code(), Some(2));
    assert_eq!(wpbm(&["frobnicate"]).status.code(), Some(2));
    let a = write(dir.path(), "a.json", HAMMING_CHAIN);
    assert_eq!(wpbm(&["weight", &a, "--vector", "0,2"]).status.code(), Some(2));
    assert_eq!(wpbm(&["verify", "--suite", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn verify_reports_and_replays() {
    let o = wpbm(&["verify", "--suite", "metric-axioms", "--q", "3", "--trials", "50", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 50);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(first["status"], "pass");
    assert!(first["elapsed_us"].is_null());
    let seed = first["seed"].as_u64().unwrap().to_string();
    let again = wpbm(&["verify", "--suite", "metric-axioms", "--q", "3", "--replay", &seed]);
    assert_eq!(stdout(&again).trim(), lines[0]);
}

#[test]
fn verify_is_thread_count_independent() {
    let run = |threads: &str| stdout(&wpbm(&["verify", "--suite", "constructions", "--trials", "5", "--threads", threads]));
    assert_eq!(run("1"), run("3"));
}

#[test]
fn verify_on_supplied_instances() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HAMMING_CHAIN);
    let b = write(dir.path(), "b.json", ONE_BIT);
    let o = wpbm(&["verify", "--suite", "dsum-mindist", "--instance", &a, "--instance", &b]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((r["values"]["d_disjoint"].as_u64(), r["values"]["d_linear"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn hard_failures_exit_one() {
    let o = wpbm(&["verify", "--suite", "packing-radius-chain", "--trials", "200", "--quiet"]);
    let summary = String::from_utf8(o.stderr).unwrap();
    let failed = summary.lines().any(|l| l.starts_with("packing-radius-chain") && !l.split_whitespace().nth(2).is_some_and(|f| f == "0"));
    assert_eq!(o.status.code(), Some(if failed { 1 } else { 0 }));
}
