//! Command-line front end for `qadpa-core`: netlist text, Touchstone and CSV
//! I/O plus the `qadpa` subcommands.

pub mod commands;
pub mod config;
pub mod error;
pub mod netlist_text;
pub mod output;
pub mod touchstone;
pub mod units;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
