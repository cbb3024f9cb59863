//! End-to-end tests of the command-line binary: output content, file formats,
//! determinism, and the exit-code contract.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szego"))
        .args(args)
        .env_remove("SZEGO_THREADS")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn parse_json(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).expect("output file exists");
    serde_json::from_str(&text).expect("valid JSON")
}

/// Complex array element `{"re":…,"im":…}` as a pair.
fn complex(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

fn matrix_entry(doc: &Value, k: usize, j: usize) -> (f64, f64) {
    complex(&doc["entries"][k - 1][j - 1])
}

fn assert_near(label: &str, got: (f64, f64), want: (f64, f64), tol: f64) {
    let d = ((got.0 - want.0).powi(2) + (got.1 - want.1).powi(2)).sqrt();
    assert!(
        d <= tol,
        "{label}: got {got:?}, want {want:?}, |diff| = {d:e} > {tol:e}"
    );
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

#[test]
fn coeffs_fgn_reference_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.json");
    run_ok(&[
        "coeffs",
        "--fgn",
        "0.75",
        "--N",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    assert_eq!(doc["N"], 4);
    assert_eq!(doc["a"].as_array().unwrap().len(), 5);
    let a_ref = [1.12075, -0.373773, -0.0763097, -0.0546738, -0.0374192];
    for (k, &want) in a_ref.iter().enumerate() {
        assert_near(&format!("a_{k}"), complex(&doc["a"][k]), (want, 0.0), 5e-6);
    }
}

#[test]
fn coeffs_banded_file_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("q.json");
    std::fs::write(&spec_path, "{\"kind\":\"banded\",\"q\":[{\"re\":-0.2}]}").unwrap();
    let out_path = dir.path().join("coeffs.json");
    run_ok(&[
        "coeffs",
        "--banded",
        spec_path.to_str().unwrap(),
        "--N",
        "8",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let doc = parse_json(&out_path);

    let spec = szego::TridiagonalSpec::new(num_complex::Complex64::new(-0.2, 0.0)).unwrap();
    let closed = szego::tridiagonal_psi_coefficients(&spec, 8).unwrap();
    for (k, want) in closed.coeffs().iter().enumerate() {
        assert_near(
            &format!("a_{k}"),
            complex(&doc["a"][k]),
            (want.re, want.im),
            1e-9,
        );
    }
}

#[test]
fn coeffs_white_noise_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.json");
    run_ok(&[
        "coeffs",
        "--fgn",
        "0.5",
        "--N",
        "32",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    assert_near("a_0", complex(&doc["a"][0]), (1.0, 0.0), 1e-12);
    for k in 1..=32 {
        assert_near(&format!("a_{k}"), complex(&doc["a"][k]), (0.0, 0.0), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

#[test]
fn invert_fgn_block_reference_corners() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("block.json");
    run_ok(&[
        "invert",
        "--fgn",
        "0.75",
        "--block",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    assert_eq!(doc["n"], 5);
    assert_eq!(doc["meta"]["source"], "szego-series");
    assert_near("(1,1)", matrix_entry(&doc, 1, 1), (1.25607, 0.0), 5e-5);
    assert_near("(2,1)", matrix_entry(&doc, 2, 1), (-0.418904, 0.0), 5e-5);
    assert_near("(5,5)", matrix_entry(&doc, 5, 5), (1.40599, 0.0), 5e-5);
}

#[test]
fn invert_closed_form_flag_switches_route() {
    let dir = tempfile::tempdir().unwrap();
    let closed_path = dir.path().join("closed.json");
    let series_path = dir.path().join("series.json");
    run_ok(&[
        "invert",
        "--tridiagonal",
        "-0.2",
        "--block",
        "5",
        "--closed-form",
        "--out",
        closed_path.to_str().unwrap(),
    ]);
    run_ok(&[
        "invert",
        "--tridiagonal",
        "-0.2",
        "--block",
        "5",
        "--out",
        series_path.to_str().unwrap(),
    ]);
    let closed = parse_json(&closed_path);
    let series = parse_json(&series_path);
    assert_eq!(closed["meta"]["source"], "closed-form");
    assert_eq!(series["meta"]["source"], "szego-series");

    let spec = szego::TridiagonalSpec::new(num_complex::Complex64::new(-0.2, 0.0)).unwrap();
    let want = szego::tridiagonal_inverse_block(&spec, 5).unwrap();
    for k in 1..=5 {
        for j in 1..=5 {
            let w = want.get(k, j);
            assert_near(
                &format!("closed ({k},{j})"),
                matrix_entry(&closed, k, j),
                (w.re, w.im),
                1e-15,
            );
            assert_near(
                &format!("series ({k},{j})"),
                matrix_entry(&series, k, j),
                (w.re, w.im),
                1e-8,
            );
        }
    }
}

#[test]
fn invert_identity_band_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.json");
    run_ok(&[
        "invert",
        "--banded",
        "identity",
        "--block",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    for k in 1..=3 {
        for j in 1..=3 {
            let want = if k == j { 1.0 } else { 0.0 };
            assert_near(
                &format!("({k},{j})"),
                matrix_entry(&doc, k, j),
                (want, 0.0),
                1e-12,
            );
        }
    }
}

#[test]
fn format_flags_render_csv_and_table() {
    let csv = run_ok(&[
        "invert",
        "--tridiagonal",
        "-0.2",
        "--block",
        "3",
        "--closed-form",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(
        text.starts_with("# n=3 source=closed-form\n"),
        "csv header:\n{text}"
    );
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().nth(1).unwrap().split(',').count(), 3);

    let table = run_ok(&[
        "invert",
        "--tridiagonal",
        "-0.2",
        "--block",
        "3",
        "--closed-form",
        "--format",
        "table",
    ]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.contains("1.04356e0"), "table body:\n{text}");
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

#[test]
fn validate_fgn_within_printed_bound() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    run_ok(&[
        "validate",
        "--fgn",
        "0.75",
        "--block",
        "5",
        "--oracle-m",
        "1000",
        "--bound",
        "2e-4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    assert_eq!(doc["m"], 1000);
    assert_eq!(doc["n"], 5);
    assert!(doc["max_abs_diff"].as_f64().unwrap() <= 2e-4);
}

#[test]
fn validate_pentadiagonal_file_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("penta.json");
    std::fs::write(
        &spec_path,
        "{\"kind\":\"banded\",\"q\":[{\"re\":-0.25},{\"re\":0.3333333333333333}]}",
    )
    .unwrap();
    let report_path = dir.path().join("report.json");
    run_ok(&[
        "validate",
        "--banded",
        spec_path.to_str().unwrap(),
        "--block",
        "5",
        "--oracle-m",
        "100",
        "--bound",
        "1e-6",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    let doc = parse_json(&report_path);
    assert!(doc["max_abs_diff"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn validate_white_noise_identity() {
    let out = run(&[
        "validate",
        "--fgn",
        "0.5",
        "--block",
        "5",
        "--oracle-m",
        "10",
        "--bound",
        "1e-12",
    ]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn validate_breach_still_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "validate",
        "--fgn",
        "0.75",
        "--N",
        "16",
        "--block",
        "5",
        "--oracle-m",
        "50",
        "--bound",
        "1e-9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4);
    let doc = parse_json(&path);
    assert!(doc["max_abs_diff"].as_f64().unwrap() > 1e-9);
}

// ---------------------------------------------------------------------------
// whittle
// ---------------------------------------------------------------------------

#[test]
fn whittle_identity_density_gives_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    run_ok(&[
        "whittle",
        "--banded",
        "identity",
        "--block",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    assert_eq!(doc["meta"]["source"], "whittle");
    for k in 1..=4 {
        for j in 1..=4 {
            let want = if k == j { 1.0 } else { 0.0 };
            assert_near(
                &format!("({k},{j})"),
                matrix_entry(&doc, k, j),
                (want, 0.0),
                1e-10,
            );
        }
    }
}

#[test]
fn whittle_diagonal_matches_limit_integral() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    run_ok(&[
        "whittle",
        "--fgn",
        "0.75",
        "--block",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    let doc = parse_json(&path);
    let density = szego::FgnDensity::new(0.75).unwrap();
    let want = szego::diagonal_limit(&density, 1e-10).unwrap();
    assert_near("(1,1)", matrix_entry(&doc, 1, 1), (want, 0.0), 1e-9);
}

/// The inverse's subdiagonal approaches the Whittle value deep in the matrix:
/// the gap shrinks as the index grows, measured purely from command output.
#[test]
fn whittle_gap_shrinks_down_the_subdiagonal() {
    let dir = tempfile::tempdir().unwrap();
    let inv_path = dir.path().join("inv.json");
    let w_path = dir.path().join("w.json");
    run_ok(&[
        "invert",
        "--fgn",
        "0.75",
        "--block",
        "41",
        "--out",
        inv_path.to_str().unwrap(),
    ]);
    run_ok(&[
        "whittle",
        "--fgn",
        "0.75",
        "--block",
        "2",
        "--out",
        w_path.to_str().unwrap(),
    ]);
    let inv = parse_json(&inv_path);
    let w1 = matrix_entry(&parse_json(&w_path), 2, 1);
    let mut previous = f64::INFINITY;
    for k in [10usize, 20, 40] {
        let got = matrix_entry(&inv, k + 1, k);
        let gap = ((got.0 - w1.0).powi(2) + (got.1 - w1.1).powi(2)).sqrt();
        assert!(
            gap < previous,
            "gap not shrinking at k={k}: {gap:e} >= {previous:e}"
        );
        previous = gap;
    }
}

// ---------------------------------------------------------------------------
// Determinism and plumbing
// ---------------------------------------------------------------------------

#[test]
fn identical_configs_give_byte_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run_ok(&[
        "coeffs",
        "--fgn",
        "0.7",
        "--N",
        "24",
        "--out",
        a.to_str().unwrap(),
    ]);
    run_ok(&[
        "coeffs",
        "--fgn",
        "0.7",
        "--N",
        "24",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let penta = "{\"kind\":\"banded\",\"q\":[{\"re\":-0.25},{\"re\":0.3333333333333333}]}";
    let a_csv = dir.path().join("a.csv");
    let b_csv = dir.path().join("b.csv");
    run_ok(&[
        "invert",
        "--banded",
        penta,
        "--format",
        "csv",
        "--out",
        a_csv.to_str().unwrap(),
    ]);
    run_ok(&[
        "invert",
        "--banded",
        penta,
        "--format",
        "csv",
        "--out",
        b_csv.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&a_csv).unwrap(),
        std::fs::read(&b_csv).unwrap()
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.json");
    let multi = dir.path().join("multi.json");
    for (threads, path) in [("1", &single), ("4", &multi)] {
        let out = Command::new(env!("CARGO_BIN_EXE_szego"))
            .args([
                "validate",
                "--fgn",
                "0.6",
                "--block",
                "4",
                "--oracle-m",
                "200",
                "--bound",
                "1e-2",
                "--out",
                path.to_str().unwrap(),
            ])
            .env("SZEGO_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(
        std::fs::read(&single).unwrap(),
        std::fs::read(&multi).unwrap()
    );
}

#[test]
fn stdout_and_file_output_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("block.json");
    run_ok(&[
        "invert",
        "--tridiagonal",
        "0.2,-0.3",
        "--block",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let stdout = run_ok(&["invert", "--tridiagonal", "0.2,-0.3", "--block", "4"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

// ---------------------------------------------------------------------------
// Exit-code contract
// ---------------------------------------------------------------------------

#[test]
fn config_errors_exit_2() {
    for args in [
        &["invert", "--fgn", "1.5"] as &[&str],
        &["invert", "--tridiagonal", "0.6"],
        &["invert", "--banded", "does-not-exist.json"],
        &["invert", "--fgn", "0.5", "--banded", "identity"],
        &["invert"],
        &["invert", "--fgn", "0.5", "--closed-form"],
        &["invert", "--fgn", "0.5", "--block", "0"],
        &["coeffs", "--fgn", "0.75", "--N", "2", "--block", "5"],
        &["coeffs", "--fgn", "0.75", "--tol", "-1"],
        &["validate", "--fgn", "0.5", "--oracle-m", "10"],
        &[
            "validate",
            "--fgn",
            "0.5",
            "--block",
            "5",
            "--oracle-m",
            "3",
            "--bound",
            "1e-6",
        ],
    ] {
        let out = run(args);
        assert_eq!(
            exit_code(&out),
            2,
            "args {args:?}:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }

    let out = Command::new(env!("CARGO_BIN_EXE_szego"))
        .args(["invert", "--fgn", "0.5"])
        .env("SZEGO_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn numeric_failure_exits_3() {
    let out = run(&["coeffs", "--fgn", "0.75", "--N", "4", "--tol", "1e-16"]);
    assert_eq!(
        exit_code(&out),
        3,
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("quadrature"));
}
