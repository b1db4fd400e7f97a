//! Verification drivers shared by the CLI and the test suites.

mod bound;
mod report;
mod sweep;
mod witness;

pub use bound::{bound_check, BoundRecord, BoundRow};
pub use report::{period_report, render, LocalComparison, Method, OutputFormat, PeriodReport, ReportRecord};
pub use sweep::{oracle_budget_from_env, sweep_verify, SweepConfig, ORACLE_BUDGET_ENV};
pub use witness::{nonperiodic_witness, verify_witness, WitnessRecord};
