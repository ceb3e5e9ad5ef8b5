//! Command-line front end for the heralded-amplifier library: emits
//! figure-ready CSV for Fock coefficients, gain sweeps, Husimi grids and
//! detector-model fidelity bounds, plus a built-in self-check report.
//!
//! Exit codes: 0 on success (including `--help` / `--version`), 1 on any
//! configuration problem (bad flags, bad config file, unwritable output),
//! 2 on numerical failure (truncation too small, non-convergence, or a
//! failing self-check).

mod commands;
mod config;
mod csvout;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
