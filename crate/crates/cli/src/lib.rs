//! Library side of the `quartics` command line tool: run configuration,
//! deterministic JSON/CSV emission, and the three subcommand drivers.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{cmd_report, cmd_sweep, cmd_verify, CommandOutcome};
pub use config::{OutputFormat, RunConfig};
