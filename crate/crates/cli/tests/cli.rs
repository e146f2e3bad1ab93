use serde_json::Value;
use std::process::{Command, Output};

fn tcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcc")).args(args).output().expect("tcc runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn paper_tables_match_golden() {
    let out = tcc(&["paper-tables"]);
    assert!(out.status.success());
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/paper_tables.json")).unwrap();
    assert!(out.stdout == golden, "paper-tables output differs from the golden file");
}

#[test]
fn gauss_bonnet_shift() {
    let out = tcc(&["sl2", "gauss-bonnet"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out)["outputs"]["shift_over_2pi"].as_f64().unwrap();
    assert!((v - 2.0).abs() < 1e-6);
}

#[test]
fn gv_a_half_at_default_resolution() {
    let out = tcc(&["gv", "compute", "a", "0.5", "--res", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["outputs"]["rel_err"].as_f64().unwrap() <= 0.02);
    assert_eq!(r["outputs"]["resolution"], 64);
}

#[test]
fn exit_codes() {
    assert_eq!(tcc(&["bogus"]).status.code(), Some(2));
    assert_eq!(tcc(&["su2", "out0", "C5"]).status.code(), Some(2));
    assert_eq!(tcc(&["gv", "compute", "a", "1.5"]).status.code(), Some(2));
    assert_eq!(tcc(&["seifert", "analyze", "g=0 b=1 (2,4)"]).status.code(), Some(2));
    // the constant coframe violates the structure equations
    assert_eq!(tcc(&["cartan", "check", "flat"]).status.code(), Some(1));
    assert_eq!(tcc(&["cartan", "check", "sl2", "--seed", "3"]).status.code(), Some(0));
}

#[test]
fn single_thread_output_is_stable() {
    let args = ["gv", "compute", "n", "2", "--res", "24", "--threads", "1"];
    let a = tcc(&args);
    let b = tcc(&args);
    assert_eq!(a.stdout, b.stdout);
    let multi = tcc(&["gv", "compute", "n", "2", "--res", "24", "--threads", "4"]);
    assert_eq!(json(&a)["outputs"], json(&multi)["outputs"]);
}

#[test]
fn reports_have_the_published_fields() {
    let r = json(&tcc(&["su2", "out0", "Dstar12"]));
    for k in ["command", "inputs", "outputs", "residuals", "verified"] {
        assert!(r.get(k).is_some(), "{k}");
    }
    assert!(r.get("wall_time_ms").is_none());
    assert_eq!(r["outputs"]["out0"], 2);
    let t = json(&tcc(&["su2", "out0", "Dstar12", "--timing"]));
    assert!(t["wall_time_ms"].as_f64().is_some());
    let table = tcc(&["torusbundle", "h1", "3", "--table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("outputs.h1") && l.ends_with("Z+Z3")));
}

#[test]
fn standardize_from_file() {
    let dir = std::env::temp_dir().join("tcc-t3-test.json");
    std::fs::write(&dir, r#"{"v": [[0.3, 1.2], [1.0, 0.0], [0.2, 0.1]], "r": [2, 0, 4]}"#).unwrap();
    let out = tcc(&["t3", "standardize", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outputs"]["canonical"]["r"], 2);
}
