//! End-to-end runs of the binary: exit codes, report fields, generator
//! round-trips, and oracle dispatch.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cosmeasure"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const CROSS_CSV: &str = "1,0,-1,0\n0,1,0,-1\n";

#[test]
fn check_reports_classification() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cross.csv", CROSS_CSV);
    let out = run(&["check", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["classification"], "MaximalPositiveBasis");
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["s"], 4);
}

#[test]
fn check_rejects_non_spanning_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "identity.csv", "1,0\n0,1\n");
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("positively span"), "stderr: {stderr}");
}

#[test]
fn check_rejects_malformed_with_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "ragged.csv", "1,0\n0\n");
    assert_eq!(code(&run(&["check", path.to_str().unwrap()])), 4);
    let path = write_file(dir.path(), "alpha.csv", "1,x\n0,1\n");
    assert_eq!(code(&run(&["check", path.to_str().unwrap()])), 4);
    assert_eq!(code(&run(&["check", "no-such-file.csv"])), 4);
}

#[test]
fn cm_on_bundled_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    assert!(gen.status.success());
    let out = run_in(dir.path(), &["cm", "fix.csv", "--oracle", "off"]);
    let doc = stdout_json(&out);
    assert!((doc["cm"].as_f64().unwrap() - 0.3015).abs() < 5e-4);
    assert!((doc["min_gamma"].as_f64().unwrap() - 0.2038).abs() < 5e-4);
    assert_eq!(doc["mode"], "Full");
    assert_eq!(doc["classification"], "IntermediatePositiveBasis");
    let bases: Vec<Vec<u64>> = doc["argmin_bases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect())
        .collect();
    assert!(bases.contains(&vec![1, 2, 4]), "1-based argmin bases: {bases:?}");
    assert_eq!(doc["stats"]["subsets_examined"], 10);
    assert_eq!(doc["stats"]["bases_found"], 8);
    assert_eq!(doc["stats"]["skipped_singular"], 2);
}

#[test]
fn cm_abridged_on_maximal_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cross.csv", CROSS_CSV);
    let out = run(&[
        "cm",
        path.to_str().unwrap(),
        "--abridged",
        "--oracle",
        "off",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["mode"], "Abridged");
    let cm = doc["cm"].as_f64().unwrap();
    assert!((cm - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
}

#[test]
fn cm_abridged_refuses_intermediate_with_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let out = run_in(dir.path(), &["cm", "fix.csv", "--abridged", "--oracle", "off"]);
    assert_eq!(code(&out), 5);
}

#[test]
fn cm_respects_limit_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let out = run_in(
        dir.path(),
        &["cm", "fix.csv", "--limit", "5", "--oracle", "off"],
    );
    assert_eq!(code(&out), 3);
}

#[test]
fn cm_limit_env_override() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let out = bin()
        .current_dir(dir.path())
        .env("COSMEASURE_SUBSET_LIMIT", "5")
        .args(["cm", "fix.csv", "--oracle", "off"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn cm_attaches_planar_oracle_automatically() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cross.csv", CROSS_CSV);
    let out = run(&["cm", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["oracle"]["method"], "AngularGapExact");
    assert_eq!(doc["oracle"]["error_bound"], 0.0);
    let cm = doc["cm"].as_f64().unwrap();
    let value = doc["oracle"]["value"].as_f64().unwrap();
    assert!((cm - value).abs() <= 1e-9);
}

#[test]
fn cm_oracle_sampling_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cross.csv", CROSS_CSV);
    let out = run(&[
        "cm",
        path.to_str().unwrap(),
        "--oracle",
        "samples=20000,seed=1",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["oracle"]["method"], "SphereSampling");
    assert_eq!(doc["oracle"]["seed"], 1);
    let cm = doc["cm"].as_f64().unwrap();
    let value = doc["oracle"]["value"].as_f64().unwrap();
    assert!(value >= cm - 1e-12);
}

#[test]
fn cm_is_bitwise_stable_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let mut bits = Vec::new();
    for workers in ["1", "2", "8"] {
        let out = run_in(
            dir.path(),
            &["cm", "fix.csv", "--workers", workers, "--oracle", "off"],
        );
        let doc = stdout_json(&out);
        bits.push(doc["cm"].as_f64().unwrap().to_bits());
    }
    assert!(bits.windows(2).all(|w| w[0] == w[1]), "{bits:?}");
}

#[test]
fn gen_minimal_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(dir.path(), &["gen", "minimal", "--n", "3", "--out", "m.csv"]);
    assert!(gen.status.success());
    let text = std::fs::read_to_string(dir.path().join("m.csv")).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 4);
    let doc = stdout_json(&run_in(dir.path(), &["check", "m.csv"]));
    assert_eq!(doc["classification"], "MinimalPositiveBasis");
}

#[test]
fn gen_maximal_with_deltas() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["gen", "maximal", "--n", "2", "--deltas", "2,3"],
    );
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "1,0,-2,0\n0,1,0,-3\n"
    );
    let bad = run_in(
        dir.path(),
        &["gen", "maximal", "--n", "2", "--deltas", "1,-1"],
    );
    assert_eq!(code(&bad), 4);
}

#[test]
fn gen_fixture_matches_bundled_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gen", "paper-example"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][..3], [1.0, 0.0, 0.0]);
    assert_eq!(rows[1][..3], [0.0, 1.0, 0.0]);
    assert_eq!(rows[2][..3], [0.0, 0.0, 1.0]);
    assert_eq!(rows[1][4], -0.9);
    assert!((rows[2][4] + 0.19f64.sqrt()).abs() <= 1e-16);
    let col5_norm = (rows[0][4].powi(2) + rows[1][4].powi(2) + rows[2][4].powi(2)).sqrt();
    assert!((col5_norm - 1.0).abs() <= 1e-12);
}

#[test]
fn json_format_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    run_in(
        dir.path(),
        &["gen", "paper-example", "--format", "json", "--out", "fix.json"],
    );
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let a = stdout_json(&run_in(dir.path(), &["cm", "fix.json", "--oracle", "off"]));
    let b = stdout_json(&run_in(dir.path(), &["cm", "fix.csv", "--oracle", "off"]));
    assert_eq!(
        a["cm"].as_f64().unwrap().to_bits(),
        b["cm"].as_f64().unwrap().to_bits()
    );
}

#[test]
fn oracle_command_planar_dispatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cross.csv", CROSS_CSV);
    let out = run(&[
        "oracle",
        path.to_str().unwrap(),
        "--samples",
        "1000000",
        "--seed",
        "0",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["method"], "AngularGapExact");
    let value = doc["value"].as_f64().unwrap();
    let exact = std::f64::consts::FRAC_1_SQRT_2;
    assert!(value >= exact - 1e-12);
    assert!(value <= exact + 5e-3);
    assert_eq!(doc["error_bound"], 0.0);
}

#[test]
fn oracle_command_reports_non_spanning_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "orthant.csv", "1,0\n0,1\n");
    let out = run(&[
        "oracle",
        path.to_str().unwrap(),
        "--samples",
        "10000",
        "--seed",
        "0",
    ]);
    let doc = stdout_json(&out);
    assert!(doc["value"].as_f64().unwrap() <= 0.0);
    let witness = doc["non_spanning_witness"].as_array().unwrap();
    assert_eq!(witness.len(), 2);
}

#[test]
fn oracle_command_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let args = ["oracle", "fix.csv", "--samples", "30000", "--seed", "9"];
    let a = stdout_json(&run_in(dir.path(), &args));
    let b = stdout_json(&run_in(dir.path(), &args));
    assert_eq!(a["value"].as_f64().unwrap().to_bits(), b["value"].as_f64().unwrap().to_bits());
    assert_eq!(a["method"], "SphereSampling");
    assert_eq!(a["samples"], 30000);
}

#[test]
fn tol_override_widens_the_tie_band() {
    // With a huge relative tie band the second-best basis of the fixture
    // (score about 4% above the minimum) joins the argmin set.
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "paper-example", "--out", "fix.csv"]);
    let strict = stdout_json(&run_in(dir.path(), &["cm", "fix.csv", "--oracle", "off"]));
    let loose = stdout_json(&run_in(
        dir.path(),
        &["cm", "fix.csv", "--oracle", "off", "--tol", "tie-rel=0.05"],
    ));
    let strict_n = strict["argmin_bases"].as_array().unwrap().len();
    let loose_n = loose["argmin_bases"].as_array().unwrap().len();
    assert_eq!(strict_n, 1);
    assert!(loose_n > strict_n, "{loose_n} vs {strict_n}");
    // The widened band only affects basis reporting; the cosine vector
    // set still holds the true minimizers.
    assert_eq!(loose["cosine_vectors"].as_array().unwrap().len(), 1);
    assert_eq!(
        loose["cm"].as_f64().unwrap().to_bits(),
        strict["cm"].as_f64().unwrap().to_bits()
    );
}

#[test]
fn zero_column_is_an_invalid_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "zero.csv", "1,0\n0,0\n");
    assert_eq!(code(&run(&["check", path.to_str().unwrap()])), 2);
}
