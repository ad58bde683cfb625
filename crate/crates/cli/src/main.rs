//! Batch driver for the oscillator/Coulomb duality checks.
//!
//! Each subcommand writes CSVs and a `summary.jsonl` under `<out>/<command>/`.
//! Exit status: 0 when every check passes, 1 on a failed check or runtime
//! error, 2 on a configuration error.

mod commands;
mod config;
mod error;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Overrides, RunConfig, OUT_ENV};
use error::CliError;

#[derive(Parser)]
#[command(name = "curved-duality", version, about, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate osc2d, osc4d or coulomb2d and check conservation
    Simulate(CommandArgs),
    /// Check the symmetry algebras at sampled phase points
    VerifyAlgebra(CommandArgs),
    /// Check the squaring map from the planar oscillator to the Coulomb system
    Bohlin(CommandArgs),
    /// Check the four-dimensional map to the MIC-Kepler system
    Ks(CommandArgs),
    /// Write a spectrum table for osc2d, osc4d, coulomb2d or mic
    Spectrum(CommandArgs),
    /// Aggregate the summaries of all suites into report.md and report.csv
    Report(CommandArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CommandArgs {
    /// Flat key=value file; keys are the long flag names
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(flatten)]
    values: Overrides,
}

type Exec = fn(&RunConfig) -> Result<bool, CliError>;

fn run(command: Command) -> Result<bool, CliError> {
    let (args, exec): (CommandArgs, Exec) = match command {
        Command::Simulate(a) => (a, commands::simulate::run),
        Command::VerifyAlgebra(a) => (a, commands::algebra::run),
        Command::Bohlin(a) => (a, commands::bohlin::run),
        Command::Ks(a) => (a, commands::ks::run),
        Command::Spectrum(a) => (a, commands::spectrum::run),
        Command::Report(a) => (a, commands::report::run),
    };
    let env_out = std::env::var_os(OUT_ENV).map(PathBuf::from);
    let cfg = RunConfig::resolve(args.values, args.config.as_deref(), env_out)?;
    exec(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
