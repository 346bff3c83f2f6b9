//! End-to-end tests of the `divfree` binary: JSON wiring, exit codes, and
//! report determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divfree"))
}

fn write_file(dir: &std::path::Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).expect("write fixture");
    path
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("divfree-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("create temp dir");
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const D1: &str = r#"{"n":2,"terms":[{"exp":[0,0],"dir":1,"coeff":{"re":"1/1","im":"0/1"}}]}"#;
const D2: &str = r#"{"n":2,"terms":[{"exp":[0,0],"dir":2,"coeff":{"re":"1/1","im":"0/1"}}]}"#;
const T1D2: &str = r#"{"n":2,"terms":[{"exp":[1,0],"dir":2,"coeff":{"re":"1/1","im":"0/1"}}]}"#;
const T2D1: &str = r#"{"n":2,"terms":[{"exp":[0,1],"dir":1,"coeff":{"re":"1/1","im":"0/1"}}]}"#;
const SBAR_SPEC: &str = r#"{"family":"Sbar","n":2,
  "lambda":[{"re":"5/1","im":"0/1"},{"re":"7/1","im":"0/1"}],
  "kappa":{"re":"2/1","im":"0/1"}}"#;
const ONE: &str = r#"{"n":2,"terms":[{"exp":[0,0],"coeff":{"re":"1/1","im":"0/1"}}]}"#;

#[test]
fn bracket_of_cartan_pair_is_zero() {
    let dir = temp_dir("bracket-zero");
    let u = write_file(&dir, "u.json", D1);
    let v = write_file(&dir, "v.json", D2);
    let out = run(&["bracket", u.to_str().unwrap(), v.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["n"], 2);
    assert_eq!(value["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn bracket_of_crossed_pair() {
    let dir = temp_dir("bracket-crossed");
    let u = write_file(&dir, "u.json", T1D2);
    let v = write_file(&dir, "v.json", T2D1);
    let out = run(&["bracket", u.to_str().unwrap(), v.to_str().unwrap()]);
    let value = stdout_json(&out);
    // t^(1,1) D_1 - t^(1,1) D_2
    assert_eq!(
        value,
        serde_json::json!({
            "n": 2,
            "terms": [
                {"exp": [1,1], "dir": 1, "coeff": {"re": "1/1", "im": "0/1"}},
                {"exp": [1,1], "dir": 2, "coeff": {"re": "-1/1", "im": "0/1"}},
            ]
        })
    );
}

#[test]
fn malformed_json_exits_2() {
    let dir = temp_dir("parse");
    let u = write_file(&dir, "u.json", "{ not json");
    let v = write_file(&dir, "v.json", D2);
    let out = run(&["bracket", u.to_str().unwrap(), v.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn act_generator_on_one_gives_its_value() {
    // l_{1,0} . 1 = lambda_1 (x_1 - 2 x_2 + kappa) = 5 x_1 - 10 x_2 + 10
    let dir = temp_dir("act");
    let spec = write_file(&dir, "spec.json", SBAR_SPEC);
    let l10 = write_file(
        &dir,
        "l10.json",
        r#"{"n":2,"terms":[{"exp":[1,0],"dir":1,"coeff":{"re":"1/1","im":"0/1"}},
                           {"exp":[1,0],"dir":2,"coeff":{"re":"-2/1","im":"0/1"}}]}"#,
    );
    let one = write_file(&dir, "one.json", ONE);
    let out = run(&[
        "act",
        spec.to_str().unwrap(),
        l10.to_str().unwrap(),
        one.to_str().unwrap(),
    ]);
    let value = stdout_json(&out);
    assert_eq!(
        value,
        serde_json::json!({
            "n": 2,
            "terms": [
                {"exp": [0,0], "coeff": {"re": "10/1", "im": "0/1"}},
                {"exp": [0,1], "coeff": {"re": "-10/1", "im": "0/1"}},
                {"exp": [1,0], "coeff": {"re": "5/1", "im": "0/1"}},
            ]
        })
    );
}

#[test]
fn act_rejects_non_members_with_exit_3() {
    // t_1 D_1 has nonzero Euler divergence, so it is outside the classical
    // family's algebra as well
    let dir = temp_dir("act-member");
    let spec = write_file(&dir, "spec.json", SBAR_SPEC);
    let bad = write_file(
        &dir,
        "bad.json",
        r#"{"n":2,"terms":[{"exp":[1,0],"dir":1,"coeff":{"re":"1/1","im":"0/1"}}]}"#,
    );
    let one = write_file(&dir, "one.json", ONE);
    let out = run(&[
        "act",
        spec.to_str().unwrap(),
        bad.to_str().unwrap(),
        one.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn act_accepts_abstract_elements() {
    // d_{1,0} routed through the embedding acts like t_1 D_2
    let stilde = r#"{"family":"Stilde","n":2,
      "lambda":[{"re":"2/1","im":"0/1"},{"re":"3/1","im":"0/1"}],
      "alpha":[{"re":"0/1","im":"0/1"},{"re":"0/1","im":"0/1"}]}"#;
    let dir = temp_dir("act-vl");
    let spec = write_file(&dir, "spec.json", stilde);
    let d10 = write_file(
        &dir,
        "d10.json",
        r#"{"d":[{"i":1,"j":0,"coeff":{"re":"1/1","im":"0/1"}}],
            "h":[{"re":"0/1","im":"0/1"},{"re":"0/1","im":"0/1"}]}"#,
    );
    let one = write_file(&dir, "one.json", ONE);
    let out = run(&[
        "act",
        spec.to_str().unwrap(),
        d10.to_str().unwrap(),
        one.to_str().unwrap(),
    ]);
    let value = stdout_json(&out);
    // d_{1,0} . 1 = lambda_1 x_2 (alpha = 0)
    assert_eq!(
        value,
        serde_json::json!({
            "n": 2,
            "terms": [{"exp": [0,1], "coeff": {"re": "2/1", "im": "0/1"}}]
        })
    );
}

#[test]
fn verify_reports_are_byte_identical_for_same_seed() {
    let args = [
        "verify",
        "--suite",
        "sigma-solver",
        "--seed",
        "99",
        "--samples",
        "10",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = run(&["verify", "--suite", "nonesuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reads_config_files_and_flag_overrides() {
    let dir = temp_dir("config");
    let cfg = write_file(
        &dir,
        "config.json",
        r#"{"n": 2, "seed": 5, "box": 2, "degree_bound": 2, "samples": 10}"#,
    );
    let out = run(&[
        "verify",
        "--suite",
        "divergence-sign-probe",
        "--config",
        cfg.to_str().unwrap(),
        "--json",
    ]);
    let value = stdout_json(&out);
    assert_eq!(value["config"]["seed"], 5);
    assert_eq!(value["config"]["box"], 2);
    // a flag overrides the file
    let out = run(&[
        "verify",
        "--suite",
        "divergence-sign-probe",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "6",
        "--json",
    ]);
    let value = stdout_json(&out);
    assert_eq!(value["config"]["seed"], 6);
}

#[test]
fn reduce_emits_replayable_trace_and_rejects_zero() {
    let dir = temp_dir("reduce");
    let spec = write_file(&dir, "spec.json", SBAR_SPEC);
    // F = (x_2 - kappa)^2 = x_2^2 - 4 x_2 + 4
    let f = write_file(
        &dir,
        "f.json",
        r#"{"n":2,"terms":[{"exp":[0,2],"coeff":{"re":"1/1","im":"0/1"}},
                           {"exp":[0,1],"coeff":{"re":"-4/1","im":"0/1"}},
                           {"exp":[0,0],"coeff":{"re":"4/1","im":"0/1"}}]}"#,
    );
    let out = run(&["reduce", spec.to_str().unwrap(), f.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert!(value["steps"].as_array().unwrap().len() > 1);
    assert!(value["targets"].is_array());

    let zero = write_file(&dir, "zero.json", r#"{"n":2,"terms":[]}"#);
    let out = run(&["reduce", spec.to_str().unwrap(), zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn extract_round_trips_the_spec_parameters() {
    let dir = temp_dir("extract");
    let spec = write_file(&dir, "spec.json", SBAR_SPEC);
    let out = run(&["extract", spec.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["family"], "Sbar");
    assert_eq!(value["lambda"][0]["re"], "5/1");
    assert_eq!(value["shift"]["Kappa"]["re"], "2/1");
}

#[test]
fn solve_sigma_dimension() {
    let out = run(&["solve-sigma", "--degree", "3"]);
    let value = stdout_json(&out);
    assert_eq!(value.as_array().unwrap().len(), 4);
    let out = run(&["solve-sigma", "--degree", "-1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn emitted_json_reparses_to_equal_values() {
    let dir = temp_dir("roundtrip");
    let u = write_file(&dir, "u.json", T1D2);
    let v = write_file(&dir, "v.json", T2D1);
    let out = run(&["bracket", u.to_str().unwrap(), v.to_str().unwrap()]);
    let first: divfree::VectorField = serde_json::from_slice(&out.stdout).unwrap();
    let echo = write_file(&dir, "echo.json", &serde_json::to_string(&first).unwrap());
    let zero = write_file(&dir, "zero.json", r#"{"n":2,"terms":[]}"#);
    let out2 = run(&["bracket", echo.to_str().unwrap(), zero.to_str().unwrap()]);
    let b: divfree::VectorField = serde_json::from_slice(&out2.stdout).unwrap();
    assert!(b.is_zero());
}
