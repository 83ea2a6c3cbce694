//! The `tourney` command line: generators, analysis, `D_k` search,
//! verification suites and batch experiments.

pub mod args;
pub mod commands;
pub mod error;
pub mod experiment;
pub mod verify;

use std::io::Write;

pub use args::Cli;
pub use error::{CliError, EXIT_IO, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    use args::Command;
    let result = match &cli.command {
        Command::Gen(a) => commands::cmd_gen(a, out),
        Command::Analyze(a) => commands::cmd_analyze(a, out),
        Command::FindDk(a) => commands::cmd_find_dk(a, out),
        Command::Verify(a) => verify::cmd_verify(a, out),
        Command::Experiment(a) => experiment::cmd_experiment(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
