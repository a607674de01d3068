use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    assert_eq!(doc["schema_version"], 1, "{args:?}");
    (doc, out.status.code().unwrap())
}

#[test]
fn s3_multiplier_is_trivial() {
    let (doc, code) = json(&["group", &data("s3.grp"), "--multiplier"]);
    assert_eq!(code, 0);
    assert_eq!(doc["invariant_factors"], serde_json::json!([]));
    assert_eq!(doc["pipelines_agree"], true);
}

#[test]
fn su3_so3_entry() {
    let (doc, code) = json(&["symspace", "--entry", "SU3_SO3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["poincare"], serde_json::json!([1, 0, 0, 0, 0, 1]));
    assert_eq!(doc["odd_rhs"], true);
}

#[test]
fn voiculescu_operator_defect() {
    let (doc, code) = json(&["stability", "--voiculescu", "8", "--defect", "--norm", "operator"]);
    assert_eq!(code, 0);
    let d = doc["max_defect"].as_f64().unwrap();
    assert!((d - 2.0 * (std::f64::consts::PI / 8.0).sin()).abs() < 1e-12);
}

#[test]
fn schatten_norm_flag() {
    let (doc, _) = json(&["stability", "--voiculescu", "5", "--defect", "--norm", "schatten:2"]);
    let (fro, _) = json(&["stability", "--voiculescu", "5", "--defect", "--norm", "frobenius"]);
    assert!((doc["max_defect"].as_f64().unwrap() - fro["max_defect"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    let args = ["stability", "--solve", "--group", "S3", "--dimension", "5", "--delta", "1e-3", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--suite", "split", "--max-order", "8"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn extension_commands() {
    let (doc, code) = json(&["extension", &data("heis3.ext"), "--five-term", "F3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["exact"], true);
    let (doc, _) = json(&["extension", &data("extensions.txt"), "--name", "Z4_over_Z2", "--pushforward", "4:2"]);
    assert_eq!(doc["constructions_agree"], true);
    let (doc, _) = json(&["extension", &data("heis3.ext"), "--transgression", "Z/3"]);
    assert_eq!(doc["transgression"]["is_zero"], false);
}

#[test]
fn group_cohomology_and_exterior_square() {
    let (doc, _) = json(&["group", &data("s3.grp"), "--cohomology", "2", "Z/2"]);
    assert_eq!(doc["cohomology"]["invariant_factors"], serde_json::json!([2]));
    let (doc, _) = json(&["group", &data("s3.grp"), "--exterior-square"]);
    assert_eq!(doc["exterior_square"]["extsq_order"], 3);
}

#[test]
fn stability_alpha_and_transfer() {
    let (doc, code) = json(&["stability", "--alpha", &data("s3.grp")]);
    assert_eq!(code, 0);
    assert_eq!(doc["irreducible_dimensions"], serde_json::json!([1, 1, 2]));
    let (doc, code) = json(&["stability", "--quotient-transfer", "--delta", "1e-3", "--seed", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["kills_normal_subgroup"], true);
}

#[test]
fn experiment_rows() {
    let (doc, code) = json(&["stability", "--experiment", &data("experiment.cfg")]);
    assert_eq!(code, 0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for key in ["n", "norm", "initial_defect", "final_defect", "distance_moved", "iterations", "converged"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_small_suite() {
    let (doc, code) = json(&["verify", "--suite", "lemma-i"]);
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["failed"], 0);
}

#[test]
fn computation_errors_exit_one() {
    let (doc, code) = json(&["symspace", "--entry", "NoSuchSpace"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"], "UnknownEntry");
    let (doc, code) = json(&["group", "/nonexistent.grp", "--multiplier"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"], "InvalidInput");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["group", "x.grp"],
        vec!["verify", "--suite", "nope"],
        vec!["stability", "--voiculescu", "4", "--bogus"],
        vec!["stability", "--voiculescu", "4", "--norm", "weird"],
        vec!["symspace", "--entry", "S3", "--list"],
        vec![],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"), "{args:?}");
    }
}

#[test]
fn verify_all_exits_zero() {
    let (doc, code) = json(&["verify", "--suite", "all", "--max-order", "16"]);
    assert_eq!(code, 0, "{}", doc["failures"]);
    assert_eq!(doc["ok"], true);
}
