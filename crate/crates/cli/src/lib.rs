//! Command-line frontend for `torsion-core`: JSON inputs, CSV output and the
//! per-N worker pool.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod sequence_csv;

pub use args::Cli;
pub use error::{CliError, Status};
