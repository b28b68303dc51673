use std::fs;
use std::path::Path;
use std::process::Command;

use spinorize_cli::{run_from_args, RunManifest};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinorize"))
}

fn run_in(dir: &Path, args: &[&str]) -> spinorize_cli::Outcome {
    let mut argv = vec!["spinorize", "--out", dir.to_str().unwrap()];
    argv.extend_from_slice(args);
    run_from_args(argv).expect("run succeeds")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn spectrum_outputs_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["spectrum", "--j1", "0.5", "--j2", "5", "--g", "0.3", "--approx", "rotating"]);
    assert_eq!(out.manifest.command, "spectrum");
    assert_eq!(out.manifest.outputs, vec!["spectrum.csv", "expectation.csv"]);
    assert_eq!(out.manifest.parameters["approx"], "rotating");
    assert_eq!(out.manifest.parameters["levels"], "200");

    let text = fs::read_to_string(tmp.path().join("spectrum.csv")).unwrap();
    assert!(text.starts_with("coupling,level_index,energy\n"));
    assert!(!text.contains('\r'));
    let energies: Vec<f64> = rows(&tmp.path().join("spectrum.csv")).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(energies.len(), 22);
    assert!((energies[0] + 0.5).abs() < 1e-10);
    assert!((energies[1] - (0.5 - 0.3)).abs() < 1e-10);

    let manifest: RunManifest =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest, out.manifest);
}

#[test]
fn uncoupled_spectrum_is_diagonal() {
    let tmp = tempfile::tempdir().unwrap();
    run_in(tmp.path(), &["spectrum", "--j1", "1", "--j2", "2", "--g", "0", "--gp", "0"]);
    let mean = rows(&tmp.path().join("expectation.csv"));
    assert_eq!(mean, vec![vec!["0".to_string(), "0".to_string()]]);
    let energies: Vec<String> = rows(&tmp.path().join("spectrum.csv")).iter().map(|r| r[2].clone()).collect();
    assert_eq!(energies[..3], ["-1", "0", "0"]);
}

#[test]
fn collective_couplings_match_direct_ones() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_in(a.path(), &["spectrum", "--atoms", "4", "--j2", "2", "--big-g", "1"]);
    run_in(b.path(), &["spectrum", "--j1", "2", "--j2", "2", "--g", "0.5"]);
    assert_eq!(
        fs::read(a.path().join("spectrum.csv")).unwrap(),
        fs::read(b.path().join("spectrum.csv")).unwrap()
    );
}

#[test]
fn replay_reproduces_csv_bodies() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    run_in(
        first.path(),
        &["spectrum", "--j1", "2", "--j2", "3", "--gp-grid", "0.1:0.5:0.1", "--levels", "7"],
    );
    let manifest = first.path().join("manifest.json");
    let replayed = run_from_args([
        "spinorize",
        "--out",
        second.path().to_str().unwrap(),
        "--replay",
        manifest.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(replayed.manifest.parameters["approx"], "counter");
    for name in ["spectrum.csv", "expectation.csv"] {
        assert_eq!(
            fs::read(first.path().join(name)).unwrap(),
            fs::read(second.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn replay_orbit_with_negative_start() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    run_in(first.path(), &["orbit", "--lambda-prime", "1", "--q0", "-1", "--p0", "-0.3", "--steps", "200"]);
    run_from_args([
        "spinorize",
        "--out",
        second.path().to_str().unwrap(),
        "--replay",
        first.path().join("manifest.json").to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(
        fs::read(first.path().join("orbit.csv")).unwrap(),
        fs::read(second.path().join("orbit.csv")).unwrap()
    );
}

#[test]
fn output_is_independent_of_thread_count() {
    let mut bodies = Vec::new();
    for threads in ["1", "4"] {
        let tmp = tempfile::tempdir().unwrap();
        let status = bin()
            .env("RAYON_NUM_THREADS", threads)
            .args(["--out", tmp.path().to_str().unwrap()])
            .args(["spectrum", "--j1", "3", "--j2", "3", "--g-grid", "0:1:0.25"])
            .status()
            .unwrap();
        assert!(status.success());
        bodies.push((
            fs::read(tmp.path().join("spectrum.csv")).unwrap(),
            fs::read(tmp.path().join("expectation.csv")).unwrap(),
        ));
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn phase_space_counter_portrait() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["phase-space", "--lambda-prime", "1", "--grid", "128x128", "--gnuplot"]);
    assert!(out.manifest.outputs.contains(&"phase_space.gp".to_string()));
    let points = rows(&tmp.path().join("fixed_points.csv"));
    let kinds: Vec<&str> = points.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(kinds, ["saddle", "center", "saddle", "center"]);
    let contours = rows(&tmp.path().join("contours.csv"));
    let levels: std::collections::BTreeSet<&str> = contours.iter().map(|r| r[0].as_str()).collect();
    assert!(levels.contains("-1"));
    assert_eq!(levels.len(), 21);
}

#[test]
fn phase_space_subcritical_has_no_saddle() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["phase-space", "--lambda-prime", "0.5", "--grid", "64x64"]);
    let points = rows(&tmp.path().join("fixed_points.csv"));
    assert!(points.iter().all(|r| r[3] != "saddle"));
    assert!(out.report.iter().any(|l| l.contains("no saddle")));
}

#[test]
fn phase_space_accepts_quantum_coupling() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["phase-space", "--gp", "0.2", "--j", "25", "--grid", "32x32"]);
    assert_eq!(out.manifest.parameters["lambda-prime"], "1");
}

#[test]
fn critical_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["critical", "--at", "1.0"]);
    let first = &out.report[0];
    let value: f64 = first.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    assert!(out.report.iter().any(|l| l.contains("center at q=0 p=0.699")));
    assert!(out.report.iter().any(|l| l.contains("p=-0.4768")));
    assert!(tmp.path().join("fixed_points.csv").exists());
}

#[test]
fn orbit_near_center_closes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["orbit", "--lambda-prime", "1", "--p0", "0.65", "--steps", "5000"]);
    assert!(out.report.iter().any(|l| l.starts_with("closed orbit")));
    let trajectory = rows(&tmp.path().join("orbit.csv"));
    assert_eq!(trajectory.len(), 5001);
}

#[test]
fn free_counter_orbit_is_straight() {
    let tmp = tempfile::tempdir().unwrap();
    run_in(tmp.path(), &["orbit", "--lambda-prime", "0", "--p0", "0.5", "--steps", "100", "--dt", "0.01"]);
    let trajectory = rows(&tmp.path().join("orbit.csv"));
    let last = trajectory.last().unwrap();
    assert_eq!(last[3], "0.5");
    assert!((last[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn spin_check_passes() {
    let tmp = tempfile::tempdir().unwrap();
    run_in(tmp.path(), &["spin-check", "--j1", "5/2", "--j2", "3"]);
    let checks = rows(&tmp.path().join("spin_check.csv"));
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|r| r[4] == "true"));
}

#[test]
fn argument_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--j2", "2"],
        &["spectrum", "--j1", "1", "--j2", "2", "--g", "1", "--approx", "counter"],
        &["spectrum", "--j1", "1", "--j2", "2", "--g-grid", "1:0:0.1"],
        &["spectrum", "--j1", "1", "--j2", "2", "--eps", "0"],
        &["phase-space", "--lambda", "1", "--lambda-prime", "1"],
        &["phase-space", "--lambda", "1", "--grid", "8x8"],
        &["critical", "--range", "0.8:2"],
        &["orbit", "--lambda-prime", "1", "--p0", "1"],
        &["orbit", "--lambda-prime", "1", "--p0", "0", "--dt", "0.1"],
        &["bogus"],
    ];
    for args in cases {
        let tmp = tempfile::tempdir().unwrap();
        let status = bin().args(["--out", tmp.path().to_str().unwrap()]).args(*args).status().unwrap();
        assert_eq!(status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn replay_rejects_bad_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{").unwrap();
    let status = bin()
        .args(["--out", tmp.path().to_str().unwrap(), "--replay", bad.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
