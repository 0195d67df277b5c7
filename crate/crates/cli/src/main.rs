//! `entfluct` command-line front end.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on numerical failures
//! (including a failed `verify`).

mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{CliError, EXIT_USAGE};

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Sweep(a) => commands::sweep(a),
        Command::Figure(a) => commands::figure(a),
        Command::Point(a) => commands::point(a),
        Command::Finite(a) => commands::finite(a),
        Command::Roots(a) => commands::roots(a),
        Command::Verify(a) => commands::verify(a),
        Command::Renyi(a) => commands::renyi_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
