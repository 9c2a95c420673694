//! File formats, reports and the command-line driver for `udes-core`.

pub mod cli;
pub mod commands;
pub mod file;
pub mod parallel;
pub mod report;

pub use cli::{run, Cli, RunOutput};
pub use commands::{CliError, ExitCode, Input, Outcome};
