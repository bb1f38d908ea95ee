use std::collections::BTreeSet;
use std::process::{Command, Output};

use levelflat_cli::{Report, Status};

fn levelflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levelflat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn verify_with_report(args: &[&str], threads: Option<&str>) -> (i32, Report) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_levelflat"));
    cmd.arg("verify").args(args).arg("--report").arg(&path);
    if let Some(n) = threads {
        cmd.env("LEVELFLAT_THREADS", n);
    }
    let out = cmd.output().unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

fn strip_times(mut r: Report) -> Report {
    r.summary.wall_time_ms = 0;
    r.config.report_path = None;
    for c in &mut r.results {
        c.elapsed_ms = 0;
    }
    r
}

#[test]
fn full_run_at_two_fails_only_on_known_cases() {
    let (code, report) = verify_with_report(&["all", "--p", "2"], None);
    assert_eq!(code, 1);
    assert!(report.results.len() >= 40);
    let failed: BTreeSet<&str> = report
        .results
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.check_id.as_str())
        .collect();
    let want: BTreeSet<&str> = [
        "dims.mixed[J={}]",
        "division[d=4]",
        "division[d=5]",
        "division[d=6]",
        "division[d=7]",
    ]
    .into();
    assert_eq!(failed, want);
    assert_eq!(report.summary.failed, 5);
    assert_eq!(report.summary.total, report.results.len());
    let ids: BTreeSet<&str> = report.results.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids.len(), report.results.len(), "check ids are unique");
    for id in ["symmetry.actions_commute", "flatness", "generic_fiber", "trace.pullback_x", "kmd.lattices_equal", "kmd.chai_norman"] {
        let r = report.results.iter().find(|r| r.check_id == id).unwrap();
        assert_eq!(r.status, Status::Pass, "{id}");
    }
}

#[test]
fn passing_suites_exit_zero() {
    for args in [&["flatness", "--p", "3"][..], &["kmd"], &["symmetry", "--p", "5"], &["intersections", "--p", "3"]] {
        let out = levelflat(&[&["verify"], args].concat());
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn kmd_defaults_to_two_and_three_needs_long() {
    let (code, report) = verify_with_report(&["kmd"], None);
    assert_eq!(code, 0);
    assert_eq!(report.config.p, 2);
    let (_, report) = verify_with_report(&["kmd", "--p", "3"], None);
    let kmd = report.results.iter().find(|r| r.check_id == "kmd").unwrap();
    assert_eq!(kmd.status, Status::Skipped);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(levelflat(&["verify", "all", "--p", "4"]).status.code(), Some(2));
    assert_eq!(levelflat(&["verify", "dims", "--p", "1"]).status.code(), Some(2));
    assert_eq!(levelflat(&["verify", "dims", "--p", "x"]).status.code(), Some(2));
    assert_eq!(levelflat(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(
        levelflat(&["verify", "dims", "--p", "5", "--subset-policy", "sample", "--samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(levelflat(&["dump", "ideal", "--p", "9"]).status.code(), Some(2));
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let args = ["dims", "--p", "3", "--subset-policy", "sample", "--samples", "2", "--seed", "11"];
    let (_, a) = verify_with_report(&args, Some("1"));
    let (_, b) = verify_with_report(&args, Some("4"));
    assert_eq!(strip_times(a.clone()), strip_times(b));
    let (_, c) = verify_with_report(&["dims", "--p", "3", "--subset-policy", "sample", "--samples", "2", "--seed", "12"], None);
    assert_ne!(strip_times(a).results, strip_times(c).results);
}

#[test]
fn unwritable_report_exits_one() {
    let out = levelflat(&["verify", "symmetry", "--p", "2", "--report", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write report"));
}

#[test]
fn table_is_printed() {
    let out = levelflat(&["verify", "division", "--p", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS    division[d=1]"));
    assert!(text.contains("FAIL    division[d=7]"));
    assert!(text.contains("p=2: 7 checks, 3 passed, 4 failed, 0 skipped"));
}

#[test]
fn aux_primes_are_used() {
    let (code, report) = verify_with_report(&["flatness", "--p", "2", "--aux-prime", "101", "--aux-prime", "103"], None);
    assert_eq!(code, 0);
    let f = report.results.iter().find(|r| r.check_id == "flatness").unwrap();
    assert_eq!(f.params["aux_ranks"], serde_json::json!([[101, 10], [103, 10]]));
}

#[test]
fn dump_formats() {
    let out = levelflat(&["dump", "ideal", "--p", "2", "--which", "KMD", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 10);
    assert_eq!(v["which"], "KMD");
    let out = levelflat(&["dump", "ideal", "--p", "3", "--which", "C", "--basis", "shifted", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("1,s,s^2,t,"));
    assert_eq!(text.lines().count(), 1 + 81 - 48);
}
