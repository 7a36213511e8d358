//! Benchmark driver: generates instances, trains configurations, runs them,
//! and reports anytime performance. The `cmcs` binary is a thin wrapper
//! around [`args`], [`commands`], and the file formats in [`schema`].

pub mod args;
pub mod commands;
pub mod schema;

use args::{Cli, Command};

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Gen(args) => commands::gen::run(args),
        Command::Train(args) => commands::train::run(args),
        Command::Solve(args) => commands::solve::run(args),
        Command::Baseline(args) => commands::baseline::run(args),
        Command::Eval(args) => commands::eval::run(args),
        Command::ExportConfig(args) => commands::export_config::run(args),
    }
}

/// I/O problems exit with 1, everything else is a contract violation (2).
pub fn exit_code(error: &anyhow::Error) -> i32 {
    let io = error.chain().any(|cause| {
        cause.downcast_ref::<std::io::Error>().is_some()
            || matches!(
                cause.downcast_ref::<cmcs::ap3::Ap3Error>(),
                Some(cmcs::ap3::Ap3Error::Io(_))
            )
    });
    if io {
        1
    } else {
        2
    }
}
