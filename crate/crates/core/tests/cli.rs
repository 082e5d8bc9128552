use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gkz(args: &[&str], dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gkz"));
    cmd.args(args).env_remove("GKZ_TOL");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn square_symmetry_group() {
    let out = gkz(&["symmetries", "--catalog", "square"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 8);
}

#[test]
fn f4_report_exits_cleanly() {
    let out = gkz(&["f4-report"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "contradiction reproduced");
}

#[test]
fn xi_of_quadric() {
    let out = gkz(&["xi", "--catalog", "quadric"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[1, 0]");
}

#[test]
fn malformed_json_has_line_info() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"matrix\": [[1, 1, 1],\n   [0, 1, 2]\n").unwrap();
    let out = gkz(&["validate", "--input", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sublattice_reports_smith_factors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub.json");
    std::fs::write(&path, r#"{"matrix": [[2, 0], [0, 2]]}"#).unwrap();
    let out = gkz(&["validate", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[2, 2]"));
}

#[test]
fn file_paths_win_over_catalog_names() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("square"), r#"{"name": "line", "matrix": [[1, 1], [0, 1]]}"#).unwrap();
    let out = gkz(&["xi", "square"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[1, 0]");
    let out = gkz(&["symmetries", "square"], None);
    assert_eq!(json(&out)["order"], 8);
}

#[test]
fn emitted_configurations_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fc.json");
    let out = gkz(&["catalog", "lauricella_fc(2)", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    let out = gkz(&["validate", path.to_str().unwrap(), "--degree-bound", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["xi"], serde_json::json!([1, 0, 0, 0]));
    gkz(&["catalog", "lauricella_fc(2)", "--out", path.to_str().unwrap()], None);
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = gkz(&["transforms", "square"], None);
    let b = gkz(&["transforms", "square"], None);
    assert_eq!(a.stdout, b.stdout);
    let a = gkz(&["verify", "pfaff", "--samples", "5"], None);
    let b = gkz(&["verify", "pfaff", "--samples", "5"], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_verification_exits_2() {
    // the unit interval does not end on zeros of f here, so integration by parts leaves boundary terms
    let out = gkz(
        &["verify", "pde", "gauss", "--m", "2", "--beta=0.7,-0.3,-0.5", "--x=1,1,1,0.25", "--cycle", "unit-interval"],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verdict"], "fail");
}

#[test]
fn passing_pde_check() {
    let out = gkz(
        &["verify", "pde", "gauss", "--m", "2", "--beta=-0.9,-0.3,-0.5", "--x=1,0.7,1.3,0.25", "--format", "text"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
}

#[test]
fn divergent_integral_is_a_numeric_error() {
    let out = gkz(&["eval", "quadric", "--beta=0.5,0.2", "--x=1,1,1"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tolerance_sources() {
    let ok = gkz(&["eval", "quadric", "--beta=-0.7,-0.2", "--x=2,1,3", "--cycle", "real-line", "--tol", "1e-6"], None);
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_gkz"))
        .args(["eval", "quadric", "--beta=-0.7,-0.2", "--x=2,1,3"])
        .env("GKZ_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let env_ok = Command::new(env!("CARGO_BIN_EXE_gkz"))
        .args(["eval", "quadric", "--beta=-0.7,-0.2", "--x=2,1,3", "--cycle", "real-line"])
        .env("GKZ_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(env_ok.status.code(), Some(0));
}

#[test]
fn classical_evaluation() {
    let out = gkz(&["eval", "gauss", "--classical", "a=0.3,b=0.5,c=1.7", "--x=1,1,1,0.25"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 1.0243559846763985).abs() < 1e-13, "{re}");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(gkz(&[], None).status.code(), Some(1));
    assert_eq!(gkz(&["standard-form", "gauss", "--m", "7"], None).status.code(), Some(1));
    assert_eq!(gkz(&["verify", "binomial", "gauss"], None).status.code(), Some(1));
}
