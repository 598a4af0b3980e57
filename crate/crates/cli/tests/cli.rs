use std::process::{Command, Output};

use serde_json::Value;

fn esrook(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esrook"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = esrook(&all);
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn mds_check_reports_kappa() {
    let out = esrook(&["mds-check", "[2,3,3,3,4,5]", "-d", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("MDS-constructible: true, kappa=3"));
    let v = json(&["mds-check", "[2,3,3,3,4,5]", "-d", "4"]);
    assert_eq!(v["verdict"]["kappa"], 3);
    assert_eq!(v["equivalences"]["agree"], true);
}

#[test]
fn exist_bound_is_exact() {
    let out = esrook(&["exist-bound", "[2,3,3,3,4,5]", "-d", "4", "-k", "3", "-q", "2"]);
    assert_eq!(stdout(&out).trim(), "-6510288900541266");
    let v = json(&["exist-bound", "[2,3,3,3,4,5]", "-d", "4", "-k", "3", "-q", "3"]);
    // Exact beyond 64 bits.
    assert_eq!(v["value"].to_string(), "345241120940998775695104");
    assert_eq!(v["certifies_existence"], true);
}

#[test]
fn count_mds_square_catalan() {
    let out = esrook(&["count-mds", "-n", "4", "-m", "4", "-d", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4\t4\t2\t5\t5\ttrue"));
    let v = json(&["count-mds", "-n", "3", "-d", "3"]);
    assert_eq!(v["formula"], 4);
    assert_eq!(v["members"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(esrook(&["kappa", "[1,2", "-d", "1"]).status.code(), Some(1));
    assert_eq!(esrook(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(esrook(&["tau", "[1,1,3]", "-r", "3"]).status.code(), Some(2));
    assert_eq!(esrook(&["tau", "[1,1,3]", "-r", "3", "--force"]).status.code(), Some(0));
    assert_eq!(esrook(&["census", "[3,3,3,3,3]", "-q", "3"]).status.code(), Some(3));
    assert_eq!(
        esrook(&["census", "[3,3,3,3,3]", "-q", "3", "--max-enum", "20000000"]).status.code(),
        Some(0)
    );
    assert_eq!(esrook(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_esrook"))
        .args(["census", "[2,2]", "-q", "2"])
        .env("ESROOK_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn census_agrees_with_polynomials() {
    let v = json(&["census", "[2,2]", "-q", "2"]);
    assert_eq!(v["counts"], serde_json::json!([1, 9, 6]));
    assert_eq!(v["polynomial_agrees"], true);
    let out = esrook(&["census", "[2,2]", "-r", "1"]);
    assert_eq!(stdout(&out).trim(), "P_q([2,2], 1) = -1 - q + q^2 + q^3");
}

#[test]
fn rookpoly_and_tau() {
    let out = esrook(&["rookpoly", "[1,3,3,4,5]", "-r", "3"]);
    assert!(stdout(&out).contains("6*q^3 + 18*q^4 + 27*q^5"));
    let v = json(&["tau", "[1,3,3,4,5]", "-r", "3"]);
    assert_eq!(v["closed_form"], 3);
    assert_eq!(v["polynomial"], 3);
}

#[test]
fn construct_round_trip() {
    let dir = std::env::temp_dir().join(format!("esrook-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    let path = path.to_str().unwrap();
    let v = json(&["construct", "[2,3,3,3,4,5]", "-d", "4", "-q", "4", "--verify", "-o", path]);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["verification"]["checked"], 21);
    let out = esrook(&["verify-space", path]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));

    // Corrupt one basis entry and expect a failing verification.
    let mut export: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let first = export["basis"][0].as_object_mut().unwrap();
    let key = first.keys().next().unwrap().clone();
    first.remove(&key);
    std::fs::write(path, export.to_string()).unwrap();
    assert_eq!(esrook(&["verify-space", path]).status.code(), Some(4));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_with_estimate_is_seeded() {
    let args = ["classify", "[2,3,3,3,4,5]", "-d", "4", "-k", "3", "-q", "9", "--trials", "300", "--seed", "5"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["class"], "DENSE");
    assert_eq!(a["estimate"], b["estimate"]);
    assert_eq!(a["estimate"]["seed"], 5);
    assert!(a["estimate"]["prng"].as_str().unwrap().starts_with("ChaCha8Rng"));
    let single = json(&["classify", "[2,3,3,3,4,5]", "-d", "4", "-k", "3", "-q", "9", "--trials", "300", "--seed", "5", "--jobs", "1"]);
    assert_eq!(a["estimate"], single["estimate"]);
}

#[test]
fn golden_suite_flags_only_the_misprint() {
    let out = esrook(&["verify-golden"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert_eq!(text.matches("FAIL").count(), 1);
    assert!(text.contains("expected 7\n      actual   5"));
    let alias = esrook(&["verify-paper"]);
    assert_eq!(alias.status.code(), Some(4));
}

#[test]
fn existence_table_passes() {
    let out = esrook(&["table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 5);
    assert!(text.contains("1.06e33"));
}
