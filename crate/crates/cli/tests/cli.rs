use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn admcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_admcube"))
        .args(args)
        .output()
        .unwrap()
}

fn run(cmd: &str, file: &str, extra: &[&str]) -> (i32, Value) {
    let path = data(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = admcube(&args);
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn typical_cube_of_two_and_three_is_admissible() {
    let (code, r) = run("check", "typ23.cube.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["admissible"], true);
    assert_eq!(r["command"], "check");
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn methods_agree_from_the_command_line() {
    for method in ["recursive", "faces0spherical", "allrestrictions"] {
        assert_eq!(run("check", "typ22.cube.json", &["--method", method]).0, 1);
        assert_eq!(run("check", "typ23.cube.json", &["--method", method]).0, 0);
    }
}

#[test]
fn koszul_two_two_fails_the_grade_condition_at_two() {
    let (code, r) = run("be", "koszul22.complex.json", &[]);
    assert_eq!(code, 1);
    assert_eq!(r["report"]["criterion"], false);
    assert_eq!(r["report"]["witness"], 2);
    assert_eq!(r["report"]["fitting"], serde_json::json!(["2", "2"]));
    let (code, r) = run("be", "koszul23.complex.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["grades"], serde_json::json!(["inf", "inf"]));
}

#[test]
fn every_command_runs_on_its_fixture() {
    let cases = [
        ("tot", "typ23.cube.json", 0),
        ("homology", "koszul22.complex.json", 0),
        ("koszul", "seq235.family.json", 0),
        ("koszul", "seq66.family.json", 1),
        ("fib", "lines.family.json", 0),
        ("fib", "typ22.cube.json", 1),
        ("adjugate-verify", "scalar.bundle.json", 0),
        ("adjugate-construct", "typ23.cube.json", 0),
        ("main-theorem", "scalar.bundle.json", 0),
        ("dct", "patch.double.json", 0),
        ("dct", "scalar.bundle.json", 0),
        ("lattice", "pentagon.lattice.json", 1),
    ];
    for (cmd, file, want) in cases {
        let (code, r) = run(cmd, file, &[]);
        assert_eq!(code, want, "{cmd} {file}: {r}");
        assert_eq!(r["passed"], want == 0);
    }
}

#[test]
fn pentagon_reports_a_modular_witness() {
    let (_, r) = run("lattice", "pentagon.lattice.json", &[]);
    assert_eq!(r["report"]["modular"]["modular"], false);
    assert!(r["report"]["modular"]["witness"].is_array());
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run("check", "koszul22.complex.json", &[]).0, 2);
    assert_eq!(run("check", "missing.json", &[]).0, 2);
    assert_eq!(run("koszul", "lines.family.json", &[]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(data("typ23.cube.json")).unwrap()).unwrap();
    v["colour"] = Value::from("blue");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = admcube(&["check", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn ring_override_reduces_the_entries() {
    let (code, r) = run("check", "typ23.cube.json", &["--ring-override", "Z/2"]);
    assert_eq!(code, 1);
    assert_eq!(r["report"]["monic"], false);
    assert_eq!(
        run("check", "typ23.cube.json", &["--ring-override", "Q"]).0,
        0
    );
}

#[test]
fn reports_are_deterministic_and_match_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let input = data("patch.double.json");
    let args = [
        "dct",
        "--input",
        input.to_str().unwrap(),
        "--report",
        path.to_str().unwrap(),
    ];
    let first = admcube(&args);
    let second = admcube(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
    let a = admcube(&["selftest", "--seed", "9", "--size", "small"]);
    let b = admcube(&["selftest", "--seed", "9", "--size", "small"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn constructed_bundles_verify() {
    let (_, r) = run("adjugate-construct", "typ23.cube.json", &[]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    std::fs::write(&path, r["report"]["bundle"].to_string()).unwrap();
    let out = admcube(&["main-theorem", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let out = admcube(&["selftest", "--seed", "0", "--size", "small"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["report"]["suites"].as_object().unwrap().len(), 10);
}
