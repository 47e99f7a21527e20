//! End-to-end checks of the binary: exit-code contract, printed values,
//! JSON report shape, determinism, and environment handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nward"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nward-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn property_status<'a>(report: &'a serde_json::Value, name: &str, s: Option<u64>) -> &'a str {
    report["properties"]
        .as_array()
        .expect("properties array")
        .iter()
        .find(|p| {
            p["property"] == name
                && match s {
                    Some(v) => p["s"] == v,
                    None => p["s"].is_null(),
                }
        })
        .unwrap_or_else(|| panic!("no property {name} with s {s:?}"))["status"]
        .as_str()
        .expect("status string")
}

#[test]
fn norm_prints_unit_parallelogram_volume() {
    let out = run(&["norm", "--n", "2", "--p", "2", "--vec", "1,0,0", "--vec", "0,1,0"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1.000000000000\n");
}

#[test]
fn norm_prints_sup_exponent_value() {
    let out = run(&["norm", "--n", "2", "--p", "inf", "--vec", "1,1", "--vec", "1,-1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2.000000000000\n");
}

#[test]
fn norm_rejects_order_above_dimension() {
    let out = run(&["norm", "--n", "3", "--p", "2", "--vec", "1,0", "--vec", "0,1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn classify_alternating_reports_unit_shift_violation() {
    let out = run(&[
        "classify", "--seq", "alternating", "--s", "2", "--H", "1000", "--tau", "1e-3",
    ]);
    assert_eq!(exit_code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(property_status(&report, "quasi-cauchy", None), "violated");
    assert_eq!(property_status(&report, "s-quasi-cauchy", Some(2)), "satisfied");
}

#[test]
fn classify_constant_is_all_clear() {
    let out = run(&["classify", "--seq", "constant", "--s", "2,3", "--H", "500"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    for p in report["properties"].as_array().unwrap() {
        assert_eq!(p["status"], "satisfied", "property {p}");
    }
}

#[test]
fn classify_sqrt_ramp_separates_pair_spread_from_unit_shift() {
    let out = run(&["classify", "--seq", "sqrt-ramp", "--H", "10000", "--tau", "1e-2"]);
    assert_eq!(exit_code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(property_status(&report, "cauchy", None), "violated");
    assert_eq!(property_status(&report, "quasi-cauchy", None), "satisfied");
}

#[test]
fn classify_rejects_unknown_catalog_name() {
    let out = run(&["classify", "--seq", "no-such-sequence"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn func_test_flags_square_on_ramp() {
    let out = run(&[
        "func-test", "--func", "coordinate-square", "--seq", "sqrt-ramp", "--property",
        "s-ward", "--s", "1", "--H", "1000", "--tau", "1e-2",
    ]);
    assert_eq!(exit_code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(report["verdict"]["status"], "violated");
}

#[test]
fn func_test_scale_modulus_is_usable() {
    let out = run(&[
        "func-test", "--func", "scale", "--func-param", "factor=0.5", "--property",
        "uniform-modulus", "--grid", "5",
    ]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn compact_extraction_fails_on_axis_ramp() {
    let dir = scratch_dir("axis-ramp");
    let seq = dir.join("ramp.toml");
    let points: Vec<String> = (1..=32).map(|k| format!("[{k}.0, 0.0]")).collect();
    std::fs::write(
        &seq,
        format!("name = \"explicit\"\npoints = [{}]\n", points.join(", ")),
    )
    .unwrap();
    let out = run(&[
        "compact", "--mode", "extract", "--seq-file", seq.to_str().unwrap(), "--H", "32",
    ]);
    assert_eq!(exit_code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(report["status"], "failed");
}

#[test]
fn compact_net_reports_packing_on_diagonal_ramp() {
    let dir = scratch_dir("diag-ramp");
    let seq = dir.join("ramp.toml");
    let points: Vec<String> = (1..=32).map(|k| format!("[{k}.0, {k}.0]")).collect();
    std::fs::write(
        &seq,
        format!("name = \"explicit\"\npoints = [{}]\n", points.join(", ")),
    )
    .unwrap();
    let out = run(&[
        "compact", "--mode", "net", "--seq-file", seq.to_str().unwrap(), "--H", "32",
        "--alpha", "0.25", "--cap", "8",
    ]);
    assert_eq!(exit_code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(report["status"], "packing-exceeded");
    assert_eq!(report["packing_witness"].as_array().unwrap().len(), 9);
}

#[test]
fn compact_extraction_succeeds_on_damped_walk() {
    let out = run(&[
        "compact", "--mode", "extract", "--seq", "random-walk-damped", "--H", "1024",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["status"], "extracted");
}

const QUICK_SUITE: &str = "\
horizon = 2000
extraction_horizon = 256
s_list = [1, 2, 3]
";

// The quick knobs plus a two-member function corpus, so every section has
// real work and the pinned counterexample cases all run.
const QUICK_SUITE_WITH_FUNCTIONS: &str = "\
horizon = 2000
extraction_horizon = 256
s_list = [1, 2, 3]

[[functions]]
family = \"scale\"
factor = 0.5

[[functions]]
family = \"lipschitz-clip\"
bound = 1.5
";

#[test]
fn suite_runs_are_byte_identical() {
    let dir = scratch_dir("suite-determinism");
    let config = dir.join("config.toml");
    std::fs::write(&config, QUICK_SUITE_WITH_FUNCTIONS).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "suite", "--config", config.to_str().unwrap(), "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
    let report: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_eq!(report["summary"]["sections"], 10);
    assert_eq!(report["summary"]["expected_violations"], 3);
    assert_eq!(report["summary"]["unexpected_violations"], 0);
}

#[test]
fn suite_default_config_is_green_with_three_counterexamples() {
    let dir = scratch_dir("suite-default");
    let report_path = dir.join("report.json");
    let out = run(&["suite", "--out", report_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report_path).unwrap()).unwrap();
    assert_eq!(report["summary"]["expected_violations"], 3);
    assert_eq!(report["summary"]["unexpected_violations"], 0);
    let ids: Vec<&str> = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "norm-axioms",
            "cauchy-binet",
            "telescoping",
            "verdict-chain",
            "s-ward-implies-ward",
            "s-ward-implies-continuous",
            "uniform-implies-s-ward",
            "uniform-limit",
            "compact-image",
            "totally-bounded-iff-s-ward-compact",
        ]
    );
}

#[test]
fn suite_rejects_zero_tolerance_before_running() {
    let dir = scratch_dir("suite-zero-tau");
    let config = dir.join("config.toml");
    std::fs::write(&config, "tau = 0.0\n").unwrap();
    let report = dir.join("report.json");
    let out = run(&[
        "suite", "--config", config.to_str().unwrap(), "--out", report.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(!report.exists(), "no report may be written on validation failure");
}

#[test]
fn suite_marks_function_sections_skipped_without_functions() {
    let dir = scratch_dir("suite-no-functions");
    let config = dir.join("config.toml");
    std::fs::write(&config, QUICK_SUITE).unwrap();
    let report_path = dir.join("report.json");
    let out = run(&[
        "suite", "--config", config.to_str().unwrap(), "--out", report_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report_path).unwrap()).unwrap();
    let sections = report["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 10);
    for idx in 4..=8 {
        assert_eq!(sections[idx]["skipped"], 1, "section {idx} should be skipped");
        assert_eq!(sections[idx]["cases"].as_array().unwrap().len(), 1);
    }
    assert_eq!(report["summary"]["expected_violations"], 2);
}

#[test]
fn thread_env_zero_means_auto() {
    let out = bin()
        .env("NWARD_THREADS", "0")
        .args(["norm", "--n", "2", "--p", "2", "--vec", "1,0", "--vec", "0,1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1.000000000000\n");
}

#[test]
fn thread_env_garbage_is_a_validation_error() {
    let out = bin()
        .env("NWARD_THREADS", "banana")
        .args(["norm", "--n", "2", "--p", "2", "--vec", "1,0", "--vec", "0,1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NWARD_THREADS"));
}

#[test]
fn unwritable_output_path_is_an_internal_error() {
    let dir = scratch_dir("unwritable");
    let missing = dir.join("missing-subdir").join("report.json");
    let out = run(&[
        "classify", "--seq", "constant", "--H", "200", "--out", missing.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4);
}
