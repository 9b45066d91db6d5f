use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SMALL_GRID: &str = "r=0.1:5:6:log,t=0:8:7,dirs=2";

fn lumen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lumen"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn bundle(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn scan_writes_dataset_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = lumen(dir.path(), &["--grid", SMALL_GRID, "fields", "scan"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("scan.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,y,z,t,zone,re_psi_x,im_psi_x,re_psi_y,im_psi_y,re_psi_z,im_psi_z,abs2_psi"
    );
    assert_eq!(lines.count(), 6 * 7 * 2);
    // 17 significant digits: d.dddddddddddddddde±x.
    let first = csv.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(first.split('e').next().unwrap().trim_start_matches('-').len(), 18, "{first}");
    let b = bundle(dir.path(), "scan.json");
    assert_eq!(b["schema_version"], 1);
    assert_eq!(b["config"]["grid"], SMALL_GRID);
    assert_eq!(b["checks"][0]["name"], "causal-confinement");
    assert_eq!(b["passed"], true);
}

#[test]
fn echoed_config_reproduces_datasets() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = lumen(a.path(), &["--grid", SMALL_GRID, "--coupling", "er-dip", "--zones", "mid,far", "fields", "scan"]);
    assert_eq!(o.status.code(), Some(0));
    let cfg = a.path().join("scan.json");
    let o = Command::new(env!("CARGO_BIN_EXE_lumen"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(b.path())
        .args(["fields", "scan"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let da = std::fs::read(a.path().join("scan.csv")).unwrap();
    let db = std::fs::read(b.path().join("scan.csv")).unwrap();
    assert_eq!(da, db);
}

#[test]
fn zero_size_grid_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = lumen(dir.path(), &["--grid", "r=1:2:0,t=0:1:5", "fields", "scan"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lumen(dir.path(), &["--coupling", "p.a", "fields", "scan"]).status.code(), Some(2));
    assert_eq!(lumen(dir.path(), &["--preset", "helium", "fields", "scan"]).status.code(), Some(2));
    assert_eq!(lumen(dir.path(), &["fields", "energy", "--rmin", "big"]).status.code(), Some(2));
    assert_eq!(lumen(dir.path(), &["frobnicate"]).status.code(), Some(2));
    let o = lumen(dir.path(), &["--coupling", "ap-exact", "fields", "scan"]);
    assert_eq!(o.status.code(), Some(2), "exact coupling has no analytic field");
}

#[test]
fn failed_runs_leave_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    // Every point lies within the default 0.2 gap of the light cone.
    let o = lumen(&out, &["--grid", "r=1:1.1:2,t=1:1.1:2,dirs=1", "oracle", "reconstruct"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists() || std::fs::read_dir(&out).unwrap().next().is_none());
}

#[test]
fn energy_echoes_geometric_mean_radius() {
    let dir = tempfile::tempdir().unwrap();
    let o = lumen(dir.path(), &["fields", "energy", "--rmin", "auto-geomean", "--threshold-ev", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let b = bundle(dir.path(), "energy.json");
    let r = b["results"]["r_min_m"].as_f64().unwrap();
    let a0: f64 = 5.29177210903e-11;
    let lambda = 121.567e-9;
    assert!((r / (a0 * lambda).sqrt() - 1.0).abs() < 1e-9, "{r}");
    assert_eq!(b["config"]["rmin"], "auto-geomean");
    let ev = b["results"]["electron_volts"].as_f64().unwrap();
    let n = b["results"]["excitations_to_threshold"].as_u64().unwrap();
    assert!(n as f64 * ev >= 1.0 && (n - 1) as f64 * ev < 1.0);
}

#[test]
fn decay_is_independent_of_thread_count() {
    let run = |threads: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_lumen"))
            .env("LUMEN_THREADS", threads)
            .arg("--out")
            .arg(dir.path())
            .args(["oracle", "decay", "--grid-preset", "coarse"])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
        std::fs::read(dir.path().join("decay.csv")).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn bad_thread_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lumen"))
        .env("LUMEN_THREADS", "zero")
        .arg("--out")
        .arg(dir.path())
        .args(["kernels", "dump"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let grid = "r=0.5:3:3,t=1.5:6:4,dirs=1";
    let o = lumen(dir.path(), &["--grid", grid, "oracle", "reconstruct"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let b = bundle(dir.path(), "reconstruct.json");
    let names: Vec<&str> = b["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["reconstruct-mid-far", "reconstruct-near"]);

    let a = dir.path().join("reconstruct.csv");
    let n = dir.path().join("analytic.csv");
    let o = lumen(dir.path(), &["oracle", "compare", a.to_str().unwrap(), n.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = lumen(dir.path(), &["oracle", "compare", a.to_str().unwrap(), a.to_str().unwrap(), "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(0));
    let c = bundle(dir.path(), "compare.json");
    assert_eq!(c["checks"][0]["measured"], 0.0);
}

#[test]
fn kernels_dump_lists_terms() {
    let dir = tempfile::tempdir().unwrap();
    let o = lumen(dir.path(), &["kernels", "dump", "--model", "quantum-ap-dip"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("quantum-ap-dip"), "{text}");
    let b = bundle(dir.path(), "kernels.json");
    let terms = b["results"]["kernels"][0]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    assert!(terms.iter().any(|t| t["derivative_order"] == -1 && t["retarded"] == false));
    assert_eq!(lumen(dir.path(), &["kernels", "dump", "--model", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_all_reports_each_check_once() {
    let dir = tempfile::tempdir().unwrap();
    let o = lumen(dir.path(), &["--seed", "7", "verify-all"]);
    let b = bundle(dir.path(), "verify-all.json");
    let checks = b["checks"].as_array().unwrap();
    let mut names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 10);
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), 10);
    let all = checks.iter().all(|c| c["passed"] == true);
    assert_eq!(b["passed"], all);
    // Exit code contract: 0 iff every check passed, 1 otherwise.
    assert_eq!(o.status.code(), Some(if all { 0 } else { 1 }));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).count(), 10);
}
