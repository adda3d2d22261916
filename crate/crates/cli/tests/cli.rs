use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn thinlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinlie"))
        .args(args)
        .env_remove("THINLIE_THREADS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn build_metabelian(dir: &Path, class: &str) -> String {
    let path = dir.join("m.json").display().to_string();
    let out = thinlie(&["build", "metabelian", "--p", "3", "--ext", "2,0", "--class", class, "-o", &path]);
    assert_eq!(out.status.code(), Some(0));
    path
}

#[test]
fn build_metabelian_writes_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_metabelian(dir.path(), "40");
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let adjoint = file["adjoint"].as_array().unwrap();
    assert_eq!(adjoint.len(), 38);
    assert!(adjoint.iter().all(|p| p == &serde_json::json!([[1, 0], [0, 0]])));
    assert_eq!(file["ext_min_poly"], serde_json::json!([2, 0]));
}

#[test]
fn build_rejects_non_prime() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json").display().to_string();
    let out = thinlie(&["build", "metabelian", "--p", "4", "--ext", "2,0", "--class", "10", "-o", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new(&path).exists());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(thinlie(&["analyze"]).status.code(), Some(2));
    assert_eq!(thinlie(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "12");
    let bad = thinlie(&["analyze", &m, "--X", "1,0,1", "--Y", "0,1,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_files_all_pass_check() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("s").display().to_string();
    let out = thinlie(&["build", "search", "--p", "3", "--ext", "2,0", "--class", "12", "--limit", "5", "-o", &out_dir]);
    assert_eq!(out.status.code(), Some(0));
    let files = report(&out)["results"]["files"].as_array().unwrap().clone();
    assert!(!files.is_empty() && files.len() <= 5);
    for f in files {
        let check = thinlie(&["check", f["file"].as_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0));
        assert_eq!(report(&check)["results"]["ok"], Value::Bool(true));
    }
}

#[test]
fn check_flags_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // [v_2, x] = v_3 with [v_2, y] = v_3 and then (0, 1): fails the Jacobi check
    std::fs::write(
        &path,
        r#"{"p":3,"ext_min_poly":[2,0],"class":6,"adjoint":[[[1,0],[1,0]],[[0,0],[1,0]],[[1,0],[0,0]],[[1,0],[0,0]]]}"#,
    )
    .unwrap();
    let out = thinlie(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["results"]["ok"], Value::Bool(false));
}

#[test]
fn analyze_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "40");
    let thin = thinlie(&["analyze", &m, "--X", "1,0,1,0", "--Y", "0,1,1,1", "--window", "12"]);
    assert_eq!(thin.status.code(), Some(0));
    let r = report(&thin);
    assert_eq!(r["results"]["verdict"], "thin");
    assert_eq!(r["results"]["dims"], serde_json::json!([2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]));
    assert_eq!(r["results"]["endo"]["dim"], 2);
    assert_eq!(r["results"]["window"], 12);
    let stderr = String::from_utf8(thin.stderr).unwrap();
    assert!(stderr.contains("verdict: thin"));

    let maximal = thinlie(&["analyze", &m, "--X", "1,0,0,0", "--Y", "0,0,1,0", "--window", "12"]);
    assert_eq!(maximal.status.code(), Some(0));
    assert_eq!(report(&maximal)["results"]["verdict"], "maximal");

    let degenerate = thinlie(&["analyze", &m, "--X", "1,0,0,0", "--Y", "0,1,0,0", "--window", "12"]);
    assert_eq!(degenerate.status.code(), Some(1));
    assert_eq!(report(&degenerate)["results"]["verdict"], "degenerate");
}

#[test]
fn endo_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "12");
    let out = thinlie(&["endo", &m, "--X", "1,0,1,0", "--Y", "0,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &report(&out)["results"];
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["dim", "min_poly", "is_field", "embedding"]);
    assert_eq!(r["min_poly"], serde_json::json!([1, 0, 1]));
    assert_eq!(r["is_field"], Value::Bool(true));
}

#[test]
fn roundtrip_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "16");
    let ok = thinlie(&["roundtrip", &m, "--X", "1,0,1,0", "--Y", "0,1,1,1"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = report(&ok);
    assert_eq!(r["results"]["branch"], "rho_prime");
    assert_eq!(r["results"]["usable_window"], 13);
    assert_eq!(r["results"]["iso"], Value::Bool(true));
    assert_eq!(r["results"]["first_failure"], Value::Null);

    let maximal = thinlie(&["roundtrip", &m, "--X", "1,0,0,0", "--Y", "0,0,1,0"]);
    assert_eq!(maximal.status.code(), Some(2));
}

#[test]
fn scan_counts_agree_on_metabelian() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "12");
    let out = thinlie(&["scan", &m]);
    assert_eq!(out.status.code(), Some(0));
    let r = &report(&out)["results"];
    assert_eq!(r["counts_agree"], Value::Bool(true));
    assert_eq!(r["thin"], r["thin_by_lines"]);
    assert_eq!(r["pairs"], 72);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metabelian(dir.path(), "12");
    let a = thinlie(&["scan", &m]);
    let b = Command::new(env!("CARGO_BIN_EXE_thinlie"))
        .args(["scan", &m])
        .env("THINLIE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let stats = thinlie(&["stats", &m]);
    assert_eq!(stats.status.code(), Some(0));
    assert_eq!(stats.stdout, thinlie(&["stats", &m]).stdout);
}

#[test]
fn bad_thread_count_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_thinlie"))
        .args(["stats", "whatever.json"])
        .env("THINLIE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
