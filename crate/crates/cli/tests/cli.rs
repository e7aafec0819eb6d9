use std::process::{Command, Output};

use serde_json::Value;

fn matfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn split_text() {
    let out = matfold(&[
        "split", "--poly", "1,2,3,4", "--n", "2", "--m", "0", "--text",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1,3");
}

#[test]
fn split_json_all_residues() {
    let out = matfold(&["split", "--poly", "1,2,3,4,5", "--n", "3"]);
    let v = json(&out);
    assert_eq!(v, serde_json::json!([["1", "4"], ["2", "5"], ["3"]]));
}

#[test]
fn split_rejects_bad_residue() {
    let out = matfold(&["split", "--poly", "1,2", "--n", "2", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_krall_laguerre_p1() {
    let out = matfold(&[
        "family",
        "--kind",
        "krall-laguerre",
        "--alpha",
        "1",
        "--r",
        "2",
        "--index",
        "1",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["family"], "krall-laguerre:alpha=1,R=2");
    assert_eq!(v["p"], serde_json::json!(["-5/3", "1"]));
}

#[test]
fn fold_matches_display_at_sample_point() {
    let out = matfold(&[
        "fold",
        "--family",
        "krall-laguerre:alpha=1,R=2",
        "--index",
        "1",
    ]);
    let v = json(&out);
    assert_eq!(
        v["p"],
        serde_json::json!([
            [["9/2", "1"], ["-11/2"]],
            [["-84/5", "-57/5"], ["156/5", "1"]]
        ])
    );
}

#[test]
fn apply_reports_eigenfunction() {
    let out = matfold(&[
        "apply",
        "--family",
        "krall-jacobi:alpha=3/2,beta=7/8,R=7",
        "--index",
        "3",
    ]);
    let v = json(&out);
    assert_eq!(v["is_eigenfunction"], true);
}

#[test]
fn fold_op_laguerre_2x2() {
    let out = matfold(&["fold-op", "--family", "laguerre:alpha=0"]);
    let v = json(&out);
    // A_2 = [[0, 4x], [4x^2, 0]]
    assert_eq!(
        v["operator"]["coeffs"][2],
        serde_json::json!([[[], ["0", "4"]], [["0", "0", "4"], []]])
    );
}

#[test]
fn solve_space_preset() {
    let out = matfold(&[
        "solve-space",
        "--scenario",
        "krall-laguerre",
        "--max-order",
        "4",
        "--summary",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["dimension"], 2);
}

#[test]
fn symmetrize_and_gram() {
    let out = matfold(&[
        "symmetrize",
        "--family",
        "krall-laguerre:alpha=0,R=7",
        "--n-max",
        "6",
    ]);
    assert_eq!(json(&out)["result"]["success"], true);
    let out = matfold(&[
        "gram",
        "--family",
        "krall-laguerre:alpha=0,R=7",
        "--m",
        "0",
        "--n",
        "2",
        "--delta",
        "7",
    ]);
    assert_eq!(
        json(&out)["gram"],
        serde_json::json!([["0", "0"], ["0", "0"]])
    );
}

#[test]
fn scenario_output_is_deterministic() {
    let a = matfold(&["scenario", "negative-controls", "--comparable"]);
    let b = matfold(&["scenario", "negative-controls", "--comparable"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert!(v.get("timings").is_none());
}

#[test]
fn full_report_has_timings() {
    let out = matfold(&["scenario", "roundtrip"]);
    let v = json(&out);
    assert!(v["timings"].is_object());
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(matfold(&["scenario", "no-such"]).status.code(), Some(2));
    assert_eq!(matfold(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        matfold(&["family", "--family", "laguerre:alpha=-3", "--index", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        matfold(&["family", "--kind", "hermite", "--index", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn list_scenarios_names_every_scenario() {
    let out = matfold(&["list-scenarios"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for s in matfold_cli::scenarios::SCENARIOS {
        assert!(text.contains(s.name));
    }
}
