//! End-to-end checks of the binary: spec'd outputs, schema stability,
//! deterministic bytes, certificate round-trip, exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradedlie"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn dims_json_matches_expected_shape() {
    let out = stdout(&["dims", "--kind", "hain", "--g", "3", "--n", "2", "--json"]);
    assert_eq!(out.trim(), r#"{"-1":12,"-2":29}"#);
}

#[test]
fn components_values() {
    assert_eq!(stdout(&["components", "--g", "2"]).trim(), "1");
    assert_eq!(stdout(&["components", "--g", "3"]).trim(), "36");
    let json = stdout(&["components", "--g", "3", "--json"]);
    assert_eq!(json.trim(), r#"{"count":"36","g":3}"#);
}

#[test]
fn sections_certificate_has_the_displayed_residue() {
    let out = stdout(&[
        "sections", "--seq", "beta-o", "--g", "3", "--n", "1", "--zeta", "1+", "--json",
    ]);
    let cert: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["candidates"][0]["verdict"], "obstructed");
    assert_eq!(
        cert["candidates"][0]["relations"][0]["theta_pair_01"],
        "4/3"
    );
    // the emitted certificate passes the verifier path: parse, recompute
    // verdicts from residues, match
    assert!(gradedlie::obstruction::verify_certificate_json(&cert).unwrap());
}

#[test]
fn sections_all_summary_lists_the_splitting_candidates() {
    let out = stdout(&[
        "sections", "--seq", "beta-prime", "--g", "2", "--n", "2", "--all", "--json",
    ]);
    let cert: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["summary"]["splitting"], serde_json::json!(["zeta[2]+"]));
    assert_eq!(
        cert["summary"]["obstructed"],
        serde_json::json!(["zeta[1]+", "zeta[1]-", "zeta[2]-"])
    );
    assert!(gradedlie::obstruction::verify_certificate_json(&cert).unwrap());
}

#[test]
fn identical_configs_produce_byte_identical_json() {
    let args = [
        "sections", "--seq", "beta-o", "--g", "2", "--n", "2", "--all", "--json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let dims = ["dims", "--kind", "punctured", "--g", "2", "--n", "3", "--json"];
    assert_eq!(stdout(&dims), stdout(&dims));
}

#[test]
fn solve_reports_the_quadratic() {
    let out = stdout(&["solve", "--seq", "beta-o", "--g", "3", "--n", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["constraints"][0]["display"], "a1^2 - 6*a1 + 1");
    assert_eq!(v["solutions"], serde_json::json!([]));
}

#[test]
fn verify_passes_for_builtins() {
    let out = stdout(&["verify", "--kind", "labute", "--g", "2", "--floor", "-3"]);
    assert!(out.contains("verify: all checks passed"));
}

#[test]
fn schur_dimensions() {
    let out = stdout(&["schur", "--g", "2", "--copies", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"]["hom(H,H)"], 1);
    assert_eq!(v["dims"]["hom(H,trivial)"], 0);
    assert_eq!(v["dims"]["hom(H,H^2)"], 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["dims", "--kind", "bogus", "--g", "2"],
        vec!["components", "--g", "1"],
        vec!["sections", "--seq", "beta-o", "--g", "3", "--n", "1", "--zeta", "9+"],
        vec!["sections", "--seq", "beta-o", "--g", "3", "--n", "1"],
        vec!["solve", "--seq", "beta-hat", "--g", "3", "--n", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn floor_cap_is_honored() {
    let out = bin()
        .args(["dims", "--kind", "labute", "--g", "2", "--floor", "-4"])
        .env("GRADEDLIE_FLOOR_CAP", "-2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-2: 5"));
    assert!(!text.contains("-4"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("capped"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("gradedlie-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let _ = stdout(&[
        "sections", "--seq", "beta-hat", "--g", "2", "--n", "1", "--all", "--json", "--out",
        path.to_str().unwrap(),
    ]);
    let body = std::fs::read_to_string(&path).unwrap();
    let cert: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(cert["summary"]["obstructed"], serde_json::json!([]));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn degenerate_sequence_reports_no_candidates() {
    let out = stdout(&["sections", "--seq", "beta-o", "--g", "3", "--n", "0"]);
    assert!(out.contains("no candidates exist"));
}
