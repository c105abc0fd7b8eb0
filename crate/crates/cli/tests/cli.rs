use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn coxkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = coxkit(&all);
    let value = serde_json::from_str(&stdout(&out)).expect("valid json");
    (value, out.status.code().expect("exit code"))
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_schema(value: &Value) {
    let schema = schema();
    let messages: Vec<String> = match schema.validate(value) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("schema violations: {messages:?}");
}

#[test]
fn info_reports_invariants() {
    let (v, code) = json(&["info", "I2(5)"]);
    assert_eq!(code, 0);
    assert_schema(&v);
    let inv = &v["invariants"];
    assert_eq!(inv["order"], 10);
    assert_eq!(inv["degrees"], serde_json::json!([2, 5]));
    assert_eq!(inv["coxeter_number"], 5);
    assert_eq!(inv["field_degree"], 2);
    assert_eq!(inv["coxeter_classes"], 2);
    assert_eq!(inv["well_generated"], true);
}

#[test]
fn info_text_format() {
    let out = coxkit(&["info", "B3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 48\n"));
    assert!(text.contains("degrees: 2,4,6\n"));
    assert!(text.ends_with("result: pass\n"));
}

#[test]
fn csv_format_has_header() {
    let out = coxkit(&["info", "A2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("section,key,value,detail"));
    assert!(text.contains("invariant,order,6,\n"));
    assert!(text.ends_with("result,passed,true,\n"));
}

#[test]
fn verify_all_passes_on_dihedral() {
    let (v, code) = json(&["verify", "G(5,5,2)"]);
    assert_eq!(code, 0);
    assert_schema(&v);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    for suite in ["coxeter", "galois", "nc", "hurwitz", "gensets"] {
        assert!(
            checks
                .iter()
                .any(|c| c["suite"] == suite && c["status"] == "pass"),
            "{suite}"
        );
    }
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn d4_counterexample_is_reported() {
    let (v, code) = json(&["verify", "D4", "--suite", "gensets"]);
    assert_eq!(code, 0);
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "d4_non_regular_generating_set")
        .expect("d4 check present");
    assert_eq!(check["status"], "pass");
}

#[test]
fn badly_generated_group_runs_galois_only() {
    let (v, code) = json(&["verify", "G(4,2,2)"]);
    assert_eq!(code, 0);
    assert_schema(&v);
    assert_eq!(v["invariants"]["well_generated"], false);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["suite"] == "galois" && c["status"] == "pass"));
    assert!(checks
        .iter()
        .any(|c| c["suite"] == "nc" && c["status"] == "skip"));

    let (v, code) = json(&["verify", "G(4,2,2)", "--suite", "galois"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn inapplicable_suite_is_a_usage_error() {
    let out = coxkit(&["verify", "G(4,2,2)", "--suite", "nc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not apply"));
}

#[test]
fn exit_codes() {
    assert_eq!(coxkit(&["info", "G(0,1,2)"]).status.code(), Some(2));
    assert_eq!(coxkit(&["info", "Q7"]).status.code(), Some(2));
    assert_eq!(
        coxkit(&["info", "A9", "--cap", "1000"]).status.code(),
        Some(3)
    );
    assert_eq!(coxkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(coxkit(&["nc", "A3", "9"]).status.code(), Some(2));
}

#[test]
fn nc_export_matches_catalan() {
    let (v, code) = json(&["nc", "H3"]);
    assert_eq!(code, 0);
    assert_schema(&v);
    let posets = v["posets"].as_array().unwrap();
    assert_eq!(posets.len(), 2);
    for p in posets {
        assert_eq!(p["size"], 32);
        assert_eq!(p["catalan_number"], 32);
        assert_eq!(p["rank_sizes"], serde_json::json!([1, 15, 15, 1]));
        assert_eq!(p["nodes"].as_array().unwrap().len(), 32);
    }
    assert_eq!(
        v["isomorphisms"],
        serde_json::json!([{ "a": 0, "b": 1, "isomorphic": true }])
    );
}

#[test]
fn nc_text_export() {
    let out = coxkit(&["nc", "A2", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), 5);
    // Hasse diagram of NC(A2): bottom, three atoms, top
    let covers = text
        .lines()
        .filter(|l| l.split(' ').count() == 2 && l.split(' ').all(|x| x.parse::<usize>().is_ok()))
        .count();
    assert_eq!(covers, 6);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("coxkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = coxkit(&[
        "info",
        "A3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["invariants"]["order"], 24);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let a = coxkit(&["verify", "H3", "--format", "json", "--threads", "1"]);
    let b = coxkit(&["verify", "H3", "--format", "json", "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn timing_is_opt_in() {
    let (v, _) = json(&["info", "A2"]);
    assert!(v.get("timing_ms").is_none());
    let (v, _) = json(&["info", "A2", "--timing"]);
    assert!(v["timing_ms"].is_u64());
    assert_schema(&v);
}
