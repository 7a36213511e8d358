//! Entry point: parse, dispatch, map errors to the exit-code contract.
//! Exit codes: 0 on success, 1 on I/O failures, 2 on contract violations
//! (bad arguments, malformed or inconsistent inputs).

use clap::Parser;
use cmcs_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(error) = cmcs_cli::run(&cli) {
        eprintln!("error: {error:#}");
        std::process::exit(cmcs_cli::exit_code(&error));
    }
}
