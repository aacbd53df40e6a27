//! Exit-code and artifact contract of the command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fakeplane"))
}

fn scripts_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fakeplane-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_exits_zero() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("y333"));
    assert!(text.contains("tricuspidal"));
}

#[test]
fn family_report_and_dot() {
    let json = tmp("y333.json");
    let dot = tmp("y333.dot");
    let out = bin()
        .args(["family", "y333"])
        .arg("--json")
        .arg(&json)
        .arg("--dot")
        .arg(&dot)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = fs::read_to_string(&json).unwrap();
    assert!(report.contains("\"schema\": 1"));
    assert!(report.contains("\"9\""));
    let dot_text = fs::read_to_string(&dot).unwrap();
    assert_eq!(dot_text.matches("label=").count(), 7);
}

#[test]
fn family_dot_counts_boundary_nodes() {
    let dot = tmp("h2p3.dot");
    let out = bin()
        .args(["family", "h_2p", "-p", "p=3"])
        .arg("--dot")
        .arg(&dot)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    // Six boundary curves.
    assert_eq!(text.matches("label=").count(), 6);
    // Conjugate pair members render dashed.
    assert_eq!(text.matches("style=dashed").count(), 4);
}

#[test]
fn reports_are_byte_identical() {
    let a = tmp("det-a.json");
    let b = tmp("det-b.json");
    for path in [&a, &b] {
        let out = bin()
            .args(["family", "h_2p", "-p", "p=2"])
            .arg("--json")
            .arg(path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unknown_family_is_usage_error() {
    let out = bin().args(["family", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parameter_constraints_name_the_condition() {
    // 4*1 - 5 = -1 is fine.
    let ok = bin()
        .args(["family", "tricuspidal", "-p", "mu=5", "-p", "nu=1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    // 4*1 - 6 = -2 violates the constraint.
    let bad = bin()
        .args(["family", "tricuspidal", "-p", "mu=6", "-p", "nu=1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("4*nu - mu"), "stderr: {err}");

    let bad_eta = bin()
        .args(["family", "kod1_generic", "-p", "mu_plus=2,2"])
        .output()
        .unwrap();
    assert_eq!(bad_eta.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad_eta.stderr);
    assert!(err.contains("eta"), "stderr: {err}");
}

#[test]
fn params_file_is_accepted() {
    let params = tmp("params.json");
    fs::write(&params, "{\"p\": 2}").unwrap();
    let out = bin()
        .args(["family", "h_2p"])
        .arg("--params-file")
        .arg(&params)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bundled_scripts_run_clean() {
    for name in [
        "cuspidal_pair_moves.json",
        "cuspidal_to_hirzebruch.json",
        "e6_to_quadric.json",
        "tricuspidal_cremona.json",
        "chain_rectification_r2.json",
    ] {
        let out = bin()
            .arg("moves")
            .arg(scripts_dir().join(name))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "script {name}");
    }
}

#[test]
fn contracting_a_minus_two_curve_exits_two() {
    let script = tmp("bad_contract.json");
    fs::write(
        &script,
        r#"{
  "start": {
    "curves": [{"label": "A", "self_int": -2}],
    "inter": [],
    "picard_rank": 2
  },
  "moves": [{"op": "contract", "label": "A"}]
}"#,
    )
    .unwrap();
    let out = bin().arg("moves").arg(&script).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a (-1)-curve"), "stderr: {err}");
}

#[test]
fn endpoint_mismatch_exits_two() {
    let script = tmp("mismatch.json");
    fs::write(
        &script,
        r#"{
  "start": {
    "curves": [{"label": "A", "self_int": -1}, {"label": "B", "self_int": -2}],
    "inter": [[ "A", "B", 1 ]],
    "picard_rank": 2
  },
  "moves": [{"op": "contract", "label": "A"}],
  "expect": {"nodes": [{"label": "B", "self_int": -2}], "edges": []}
}"#,
    )
    .unwrap();
    let out = bin().arg("moves").arg(&script).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unparsable_script_is_usage_error() {
    let script = tmp("broken.json");
    fs::write(&script, "{").unwrap();
    let out = bin().arg("moves").arg(&script).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_all_filter_runs_subset() {
    let out = bin()
        .args(["verify-all", "--filter", "kod1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("kod1_generic"));
    assert!(text.contains("kod1_conjugate"));
    assert!(!text.contains("y333"));
}
