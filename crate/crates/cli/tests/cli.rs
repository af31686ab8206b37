use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_invsmooth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("JSON error on stderr")
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn without_timestamp(mut v: Value) -> Value {
    v["manifest"].as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn kummer_build_has_zeta_37() {
    let v = stdout_json(&run(&["build", "--kind", "kummer", "--p", "43", "--d", "6"]));
    assert_eq!(v["result"]["params"]["zeta"], 37);
    assert_eq!(v["result"]["A"], serde_json::json!([40, 0, 0, 0, 0, 0, 1]));
    assert_eq!(v["manifest"]["config"]["command"], "build");
}

#[test]
fn build_then_check_every_kind() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 4] = [
        ("kummer", &["--kind", "kummer", "--p", "43", "--d", "6"]),
        ("as", &["--kind", "artin-schreier", "--p", "7"]),
        ("torus", &["--kind", "torus", "--p", "13", "--d", "7"]),
        ("elliptic", &["--kind", "elliptic", "--p", "11", "--d", "7"]),
    ];
    for (name, args) in cases {
        let path = build(dir.path(), &format!("{name}.json"), args);
        let v = stdout_json(&run(&["check", &path]));
        assert_eq!(v["result"]["passed"], true, "{name}");
    }
}

#[test]
fn corrupted_modulus_fails_frobenius_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "k.json", &["--kind", "kummer", "--p", "43", "--d", "6"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // 18 is a primitive root with 18^7 = 7, so the stored zeta = 37 is wrong.
    v["result"]["A"] = serde_json::json!([25, 0, 0, 0, 0, 0, 1]);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["check", &path]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr_json(&out);
    assert_eq!(err["code"], "FrobeniusMismatch");
    assert!(err["message"].is_string());
}

#[test]
fn artin_schreier_linear_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "as.json", &["--kind", "artin-schreier", "--p", "7"]);
    let v = stdout_json(&run(&["orbits", &path, "--kappa", "1"]));
    let orbits = v["result"]["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0]["members"].as_array().unwrap().len(), 7);
}

#[test]
fn invalid_config_exits_two() {
    let out = run(&["build", "--kind", "torus", "--p", "13", "--d", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["code"], "DegreeNotCompatible");
    let out = run(&["build", "--kind", "kummer", "--p", "44", "--d", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", "/nonexistent/rep.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ee-sieve", "--p", "11", "--d", "7", "--d1", "1", "--d2", "1", "--xi-m", "1", "--kappa", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "k.json", &["--kind", "kummer", "--p", "43", "--d", "6"]);
    let out = run(&["dlog", &path, "--kappa", "2", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["code"], "Timeout");
}

#[test]
fn identical_runs_match_up_to_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "k.json", &["--kind", "kummer", "--p", "43", "--d", "6"]);
    let runs: [&[&str]; 3] = [
        &["dlog", &path, "--kappa", "2", "--seed", "9", "--workers", "3"],
        &["jl-sieve", "--p", "43", "--df", "3", "--dg", "2", "--d", "6", "--kappa", "2", "--budget", "300", "--seed", "4"],
        &["ee-sieve", "--p", "11", "--d", "7", "--d1", "2", "--d2", "2", "--xi-m", "1", "--kappa", "4", "--budget", "100", "--workers", "2"],
    ];
    for args in runs {
        let a = without_timestamp(stdout_json(&run(args)));
        let b = without_timestamp(stdout_json(&run(args)));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn dlog_reports_big_integers_as_strings() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "t.json", &["--kind", "torus", "--p", "13", "--d", "7"]);
    let v = stdout_json(&run(&["dlog", &path, "--kappa", "2", "--targets", "3"]));
    let logs = v["result"]["individual_logs"].as_array().unwrap();
    assert_eq!(logs.len(), 3);
    assert!(logs.iter().all(|l| l["log"].is_string()));
    assert!(v["result"]["table"]["N"].is_string());
}
