use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn murai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_murai"))
        .args(args)
        .env_remove("MURAI_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gens_set(s: &str) -> BTreeSet<String> {
    s.trim().split(';').map(|g| g.trim().to_string()).collect()
}

#[test]
fn dual_of_c22_example() {
    let out = stdout(&murai(&["dual", "--c", "2,2", "--gens", "1 0; 0 2"]));
    assert_eq!(gens_set(&out), gens_set("1 1; 0 2"));
    let json: Value = serde_json::from_str(&stdout(&murai(&["dual", "--c", "2,2", "--gens", "1 0; 0 2", "--json"]))).unwrap();
    assert_eq!(json["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn facets_of_z4() {
    let out = stdout(&murai(&["facets", "--c", "3", "--gens", "1"]));
    assert!(out.starts_with("4 facets\n"), "{out}");
    assert_eq!(out.lines().count(), 5);
    let json: Value = serde_json::from_str(&stdout(&murai(&["facets", "--c", "3", "--gens", "1", "--json"]))).unwrap();
    assert_eq!(json["facets"].as_array().unwrap().len(), 4);
    assert_eq!(json["fVector"], serde_json::json!([4, 4]));
}

#[test]
fn sr_ideal_lists_generators() {
    let json: Value = serde_json::from_str(&stdout(&murai(&["sr-ideal", "--c", "2,1", "--gens", "0 1; 1 0", "--json"]))).unwrap();
    assert!(!json["generators"].as_array().unwrap().is_empty());
}

#[test]
fn check_all_on_kp() {
    let args = ["check", "--c", "2,1,1", "--gens", "2 0 0; 0 1 0; 0 0 1", "--all"];
    let out = stdout(&murai(&args));
    assert!(out.contains("sphere: yes"), "{out}");
    assert!(out.contains("chordal: yes"), "{out}");
    assert!(out.contains("stacked: yes, k=3"), "{out}");
    assert!(out.contains("type: K_P"), "{out}");
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let json: Value = serde_json::from_str(&stdout(&murai(&json_args))).unwrap();
    assert_eq!(json["sphere"], Value::Bool(true));
    assert_eq!(json["stackedness"]["truncation_cuts"], 3);
}

#[test]
fn buchstaber_on_pentagon() {
    let json: Value = serde_json::from_str(&stdout(&murai(&["buchstaber", "--c", "2,1", "--gens", "0 1; 1 0", "--json"]))).unwrap();
    assert_eq!(json["report"]["sExact"], 3);
    assert_eq!(json["report"]["s2Exact"], 3);
    assert_eq!(json["report"]["canonicalLowerBound"], 2);
}

#[test]
fn cyclic_compare_at_k3() {
    let out = stdout(&murai(&["cyclic-compare", "--c", "5,3", "--gens", "3 0; 2 1; 1 2; 0 3", "--p", "10", "--q", "7"]));
    assert!(out.starts_with("isomorphic to Δ(10, 7)"), "{out}");
    let out = stdout(&murai(&["cyclic-compare", "--c", "3", "--gens", "1", "--p", "5", "--q", "2"]));
    assert!(out.starts_with("not isomorphic"), "{out}");
}

fn census_json(c: &str, dir: &tempfile::TempDir) -> (Vec<Value>, Value) {
    let path = dir.path().join(format!("census-{c}.jsonl"));
    let out = murai(&["census", "--c", c, "--out", path.to_str().unwrap(), "--json", "--jobs", "2"]);
    let summary: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (records, summary)
}

fn class_names(summary: &Value) -> BTreeSet<String> {
    summary["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap_or("-").to_string())
        .collect()
}

#[test]
fn census_c21() {
    let dir = tempfile::tempdir().unwrap();
    let (records, summary) = census_json("2,1", &dir);
    assert_eq!(records.len(), 8);
    assert_eq!(summary["records"], 8);
    assert_eq!(class_names(&summary), ["Z_4", "Z_5", "∂Δ^2"].map(String::from).into());
    for r in &records {
        assert_eq!(r["v"], 1);
    }
}

#[test]
fn census_c211_has_both_exceptional_classes() {
    let dir = tempfile::tempdir().unwrap();
    let (records, summary) = census_json("2,1,1", &dir);
    assert_eq!(records.len(), 48);
    let names = class_names(&summary);
    assert!(names.contains("K_P") && names.contains("K_Q"), "{names:?}");
    assert_eq!(summary["classes"].as_array().unwrap().len(), 9);
}

#[test]
fn census_c4() {
    let dir = tempfile::tempdir().unwrap();
    let (records, summary) = census_json("4", &dir);
    assert_eq!(records.len(), 4);
    assert_eq!(class_names(&summary), ["∂Δ^1*∂Δ^2", "∂Δ^3"].map(String::from).into());
}

#[test]
fn census_output_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str| {
        let path = dir.path().join(format!("j{jobs}.jsonl"));
        let out = murai(&["census", "--c", "2,2", "--out", path.to_str().unwrap(), "--jobs", jobs]);
        assert!(out.status.success());
        std::fs::read(&path).unwrap()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn census_text_summary_and_stdout_records() {
    let out = stdout(&murai(&["census", "--c", "3"]));
    assert!(out.starts_with("c = (3): 3 records, 2 iso classes"), "{out}");
    let out = murai(&["census", "--c", "3", "--out", "-"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("iso classes"));
}

#[test]
fn exit_codes() {
    assert_eq!(murai(&["dual", "--c", "2,x", "--gens", "0 0"]).status.code(), Some(2));
    assert_eq!(murai(&["dual", "--c", "2", "--gens", "3"]).status.code(), Some(2));
    assert_eq!(murai(&["dual", "--c", "2", "--gens", "2"]).status.code(), Some(2));
    assert_eq!(murai(&["facets", "--c", "2"]).status.code(), Some(2));
    assert_eq!(murai(&["bogus"]).status.code(), Some(2));
    assert_eq!(murai(&["census", "--c", "2,1", "--max-grid", "4"]).status.code(), Some(3));
    assert_eq!(murai(&["census", "--c", "2,1", "--max-vertices", "3"]).status.code(), Some(3));
    assert_eq!(murai(&["census", "--c", "2,1", "--invariants", "nope"]).status.code(), Some(2));
    let unwritable = murai(&["census", "--c", "2,1", "--out", "/nonexistent-dir/x.jsonl"]);
    assert_eq!(unwritable.status.code(), Some(1));
}
