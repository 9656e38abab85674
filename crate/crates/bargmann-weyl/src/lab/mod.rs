//! Experiment configuration, runners and reports.
//!
//! [`config`] reads TOML experiment files, [`runners`] executes the
//! `bwlab` subcommands, [`checks`] holds the numbered verification suite
//! and [`report`] writes the CSV tables and JSON reports.

pub mod checks;
pub mod config;
pub mod report;
pub mod runners;
pub mod sweep;

pub use checks::{run_check, CheckOutcome, CheckParams, CHECK_NAMES};
pub use config::{ExperimentConfig, Route, SymbolSpec};
pub use report::{write_outputs, Echo, Report, Table, VERSION};
pub use runners::{run, run_compose, run_decomp_check, run_gevrey_fit, run_norm_sweep, run_verify};
