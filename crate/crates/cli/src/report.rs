use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::check::{CheckResult, Status};
use crate::config::RunConfig;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub p: u32,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub wall_time_ms: u64,
}

impl Summary {
    pub fn of(p: u32, results: &[CheckResult], wall_time_ms: u64) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        Summary {
            p,
            total: results.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            wall_time_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<CheckResult>, wall_time_ms: u64) -> Self {
        let summary = Summary::of(config.p, &results, wall_time_ms);
        Report {
            version: REPORT_VERSION.into(),
            config,
            results,
            summary,
        }
    }
}

fn cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Plain-text table of the results and the summary line.
pub fn write_table(report: &Report, out: &mut impl Write) -> io::Result<()> {
    let width = report
        .results
        .iter()
        .map(|r| r.check_id.len())
        .max()
        .unwrap_or(8)
        .max(8);
    writeln!(out, "{:<7} {:<width$} {:>8}  expected / actual", "status", "check", "ms")?;
    for r in &report.results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let detail = match (&r.status, &r.note) {
            (Status::Skipped, Some(n)) => n.clone(),
            (_, Some(n)) if r.expected.is_null() => format!("{} ({n})", cell(&r.actual)),
            (_, note) => {
                let base = format!("{} / {}", cell(&r.expected), cell(&r.actual));
                match note {
                    Some(n) => format!("{base} ({n})"),
                    None => base,
                }
            }
        };
        writeln!(out, "{:<7} {:<width$} {:>8}  {detail}", status, r.check_id, r.elapsed_ms)?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "p={}: {} checks, {} passed, {} failed, {} skipped in {} ms",
        s.p, s.total, s.passed, s.failed, s.skipped, s.wall_time_ms
    )
}

/// Writes the JSON report to `path` (if given) and the table to stdout.
pub fn emit_report(report: &Report, path: Option<&Path>) -> io::Result<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(report).map_err(io::Error::other)?;
        fs::write(path, text + "\n")?;
    }
    let stdout = io::stdout();
    write_table(report, &mut stdout.lock())
}
