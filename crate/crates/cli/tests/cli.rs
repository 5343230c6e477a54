//! End-to-end runs of the binary: exit codes, output schemas, round-trip and
//! determinism guarantees.

use std::process::{Command, Output};

fn ndpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndpa"))
        .args(args)
        .env_remove("AMP_NMAX")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_ground_state_row_matches_closed_form() {
    let out = ndpa(&[
        "spectrum", "--omega1", "1.2", "--omega2", "0.8", "--chi", "0.6", "--m", "0", "--nmax",
        "40",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows[0][0], "0");
    let e_closed: f64 = rows[0][3].parse().unwrap();
    assert!((e_closed + 0.2).abs() < 1e-12);
    let diff: f64 = rows[0][5].parse().unwrap();
    assert!(diff < 1e-8);
}

#[test]
fn spectrum_at_zero_coupling_reduces_to_bare_oscillators() {
    let out = ndpa(&["spectrum", "--omega1", "1.2", "--omega2", "0.8", "--chi", "0", "--m", "0"]);
    assert!(out.status.success());
    for row in data_rows(&stdout(&out)) {
        let n: f64 = row[0].parse().unwrap();
        let e: f64 = row[3].parse().unwrap();
        assert!((e - n).abs() < 1e-12, "E = Omega N / 2 = N at Omega = 2");
    }
}

#[test]
fn unstable_parameters_exit_with_code_two() {
    let out = ndpa(&["spectrum", "--omega1", "1", "--omega2", "1", "--chi", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ndpa(&["berry", "--omega1", "1", "--omega2", "1", "--chi", "2.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_floats_round_trip_and_output_is_deterministic() {
    let args = ["spectrum", "--chi", "0.45", "--m", "1", "--nmax", "44"];
    let first = ndpa(&args);
    let second = ndpa(&args);
    assert_eq!(first.stdout, second.stdout, "identical config must be byte-identical");
    for row in data_rows(&stdout(&first)) {
        for cell in &row[3..] {
            let value: f64 = cell.parse().expect("floats parse");
            assert_eq!(format!("{value:.16e}"), *cell, "printed text reproduces the bits");
        }
    }
}

#[test]
fn berry_record_agrees_between_routes() {
    let out = ndpa(&["berry", "--omega1", "1", "--omega2", "1", "--chi", "0.6", "--N", "3"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    let value = |name: &str| -> f64 {
        rows.iter().find(|r| r[0] == name).expect(name)[1].parse().unwrap()
    };
    assert!((value("closed_form") - std::f64::consts::PI).abs() < 1e-12);
    assert!(value("abs_diff_quadrature") < 1e-8);
}

#[test]
fn berry_rejects_non_winding_drives() {
    let out = ndpa(&["berry", "--winding", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mandel_table_flags_vacuum_modes_without_failing() {
    let out = ndpa(&[
        "mandel", "--omega1", "1", "--omega2", "1", "--chi", "0", "--N", "1", "--nmax", "24",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    // (0,0) at chi = 0: both modes empty, flagged undefined.
    assert_eq!(rows[0][6], "undefined");
    // (1,1) at chi = 0: mode a occupied (exact number state), mode b empty.
    assert_eq!(rows[1][6], "number-state");
    let qa: f64 = rows[1][2].parse().unwrap();
    assert_eq!(qa, -1.0);
    assert_eq!(rows[1][7], "undefined");
}

#[test]
fn mandel_closed_and_brute_columns_agree() {
    let out = ndpa(&["mandel", "--omega1", "1", "--omega2", "1", "--chi", "0.6", "--N", "2"]);
    assert!(out.status.success());
    for row in data_rows(&stdout(&out)) {
        let a_closed: f64 = row[2].parse().unwrap();
        let a_brute: f64 = row[3].parse().unwrap();
        assert!((a_closed - a_brute).abs() < 1e-8, "{row:?}");
    }
}

#[test]
fn wavefunction_sampling_emits_the_grid() {
    let out = ndpa(&["wavefunction", "--N", "2", "--m", "2", "--steps", "8"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 8 * 32);
    // r = 0 with m >= 1 vanishes.
    let abs2: f64 = rows[0][4].parse().unwrap();
    assert_eq!(abs2, 0.0);
}

#[test]
fn wavefunction_rejects_bad_quantum_numbers() {
    let out = ndpa(&["wavefunction", "--N", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2), "parity violation");
    let out = ndpa(&["wavefunction", "--N", "2", "--m", "-2"]);
    assert_eq!(out.status.code(), Some(2), "negative m");
}

#[test]
fn verify_single_suite_passes_and_unknown_suite_is_rejected() {
    let out = ndpa(&["verify", "--suite", "orbit"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pass"));

    let out = ndpa(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_schema() {
    let out = ndpa(&["verify", "--suite", "berry", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["meta"]["version"].is_string());
    let data = doc["data"].as_array().unwrap();
    assert!(!data.is_empty());
    for entry in data {
        assert_eq!(entry["pass"], "pass");
    }
}

#[test]
fn verify_spectrum_respects_tolerance_override() {
    // A looser tolerance widens the interior but must still pass.
    let out = ndpa(&["verify", "--suite", "spectrum", "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_var_overrides_default_truncation() {
    let out = Command::new(env!("CARGO_BIN_EXE_ndpa"))
        .args(["spectrum", "--chi", "0.3"])
        .env("AMP_NMAX", "52")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("# nmax = 52"));
}

#[test]
fn output_file_writing_works() {
    let dir = std::env::temp_dir().join(format!("ndpa-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let out = ndpa(&["spectrum", "--chi", "0.3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# omega1"));
    std::fs::remove_dir_all(&dir).ok();
}
