//! Command-line frontend for `povm-coherence`.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the range checks

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod mc;

use args::{Cli, Command};
use commands::Output;
use error::CliError;

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Lsm(a) => commands::lsm(a),
        Command::Uncertainty(a) => commands::uncertainty(a),
        Command::Haar(a) => commands::haar(a),
    }
}
