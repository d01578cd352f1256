//! Command-line layer over `qcolor-core`: DIMACS and ChiTable files, JSON run
//! reports and the `qcolor` subcommands.

pub mod args;
pub mod chitable;
pub mod commands;
pub mod dimacs;
pub mod error;
pub mod report;

use clap::Parser;

pub use args::{Cli, Command};
pub use error::CliError;

/// Runs a parsed command line; `echo` is recorded in reports.
pub fn execute(cli: &Cli, echo: &str) -> Result<String, CliError> {
    match &cli.command {
        Command::Chromatic(a) => commands::chromatic(a, echo),
        Command::Kcolor(a) => commands::kcolor(a, echo),
        Command::Mis(a) => commands::mis(a, echo),
        Command::Exponents(a) => commands::exponents(a, echo),
        Command::Gen(a) => commands::gen(a),
        Command::Bench(a) => commands::bench(a, echo),
    }
}

/// Parses and runs `args` (without the program name), returning what would be
/// printed on standard output.
pub fn run<I, S>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(std::iter::once("qcolor".to_string()).chain(args.iter().cloned()))
        .map_err(|e| CliError::Parse(e.to_string()))?;
    execute(&cli, &args.join(" "))
}
