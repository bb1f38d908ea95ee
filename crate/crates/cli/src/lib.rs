//! Orchestration of the level-structure checks, JSON reports and ideal dumps.

pub mod check;
pub mod config;
pub mod dump;
pub mod report;
pub mod suite;

pub use check::{CheckResult, Status};
pub use config::{RunConfig, Suite};
pub use report::{emit_report, Report, Summary};
pub use suite::{flatness_certificate, run_suite};
