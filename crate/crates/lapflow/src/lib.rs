//! Command-line front end for `lapflow-core`: graph and problem files,
//! experiment drivers and CSV reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;

pub use args::Cli;
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        args::Command::Solve(a) => commands::solve(a),
        args::Command::Flow(a) => commands::flow(a),
        args::Command::Bench(a) => commands::bench(a),
        args::Command::Scale(a) => commands::scale(a),
    }
}
