//! Command-line front end for `requilibrium`: the tensor file format, the commands
//! and the self-check suite.

pub mod commands;
pub mod error;
pub mod selfcheck;
pub mod tensor_file;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ExampleName, ExampleParams, Outcome};
use error::CliError;
use requilibrium::SignRule;

#[derive(Debug, Parser)]
#[command(name = "requilibrium", version, about = "Exact det^{S^r} and r-equilibrium computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact det^{S^r} of a configuration or force file with q = r*d.
    Det {
        #[arg(long)]
        input: PathBuf,
        /// Also print the labeled system matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Decide whether a force system admits a nonzero symmetric rescaling in equilibrium.
    Solve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a seeded example tensor file.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Point dimension for `differences`.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Space dimension for `wedge`.
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Coordinates are drawn from [-bound, bound].
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Seeded random search for configurations with nonzero det^{S^r}; prints JSON.
    WitnessSearch {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Check the linear dependence relations among the equations at random coefficients.
    VerifyRelations {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the fast invariant suite.
    Selfcheck {
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
        /// Build the equations with a deliberately wrong sign table.
        #[arg(long, hide = true)]
        corrupt_signs: bool,
    },
}

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Det { input, matrix } => commands::det(&input, matrix),
        Command::Solve { input } => commands::solve(&input),
        Command::Example {
            name,
            seed,
            output,
            d,
            s,
            bound,
        } => commands::example(name, ExampleParams { seed, bound, d, s }, output.as_deref()),
        Command::WitnessSearch {
            r,
            d,
            trials,
            bound,
            seed,
            parallel,
        } => commands::witness(r, d, trials, bound, seed, parallel),
        Command::VerifyRelations { input, trials, seed } => commands::verify_relations(&input, trials, seed),
        Command::Selfcheck {
            trials,
            seed,
            parallel,
            corrupt_signs,
        } => {
            let rule = if corrupt_signs {
                SignRule::SlotBlind
            } else {
                SignRule::Standard
            };
            Ok(selfcheck::run(&selfcheck::Options {
                trials,
                seed,
                parallel,
                rule,
            })?)
        }
    }
}

/// Parses `args`, runs the command and maps the result to an exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(Outcome { text, status }) => {
            print!("{text}");
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
