//! Command-line front end: chart and setup files, subcommands and reports.

pub mod chartfile;
pub mod commands;
pub mod fixtures;
pub mod report;

pub use chartfile::{emit_chart, parse_chart, ChartError, ChartFile};
pub use commands::{run, run_command};
pub use report::{Report, Status};
