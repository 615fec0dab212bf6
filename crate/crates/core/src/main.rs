use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use taulattice::cli::{execute, Cli};

fn main() -> ExitCode {
    let outcome = execute(&Cli::parse());
    // Broken pipes are not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
