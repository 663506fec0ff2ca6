//! Command-line driver for the `carleman` toolkit: run configuration,
//! sequence specs, the verification suite and report emission.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod seqspec;
pub mod suite;

pub use config::{Format, RunConfig};
pub use error::CliError;
pub use report::{emit_report, Record, Report, Status, Table};
pub use seqspec::SeqSpec;
pub use suite::run_verify_suite;
