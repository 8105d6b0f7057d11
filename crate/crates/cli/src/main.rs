//! `aks-workbench`: run the AKS and Miller-Rabin engines, the storage
//! estimator and the `(n, r)` auditor from the command line.
//!
//! Exit statuses: 0 prime / all valid, 1 composite / some invalid,
//! 2 usage or domain error, 3 the two engines disagreed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "aks-workbench",
    version,
    about = "Deterministic primality testing workbench"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputMode::Text, global = true)]
    output: OutputMode,

    /// Run AKS even above the --max-bits guard.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Aks,
    MillerRabin,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a number is prime.
    Test {
        /// Decimal, or hex with a 0x prefix; underscores allowed.
        number: String,
        #[arg(long, value_enum, default_value_t = Algorithm::Aks)]
        algorithm: Algorithm,
        /// Largest input, in bits, the AKS engine accepts without --force.
        #[arg(long, default_value_t = 64)]
        max_bits: u64,
        /// Comma-separated Miller-Rabin bases (default: the first twelve primes).
        #[arg(long, value_delimiter = ',', conflicts_with = "random_bases")]
        bases: Option<Vec<String>>,
        /// Use this many uniformly random Miller-Rabin bases instead.
        #[arg(long)]
        random_bases: Option<usize>,
        /// Seed for --random-bases.
        #[arg(long, requires = "random_bases")]
        seed: Option<u64>,
    },
    /// Storage estimates for AKS (proven and conjectured r) and Miller-Rabin.
    Estimate {
        #[arg(long)]
        bits: String,
        /// Multiplier on r.
        #[arg(long, default_value = "1")]
        k: String,
    },
    /// Check whether r satisfies ord_r(n) > bit_length(n)^2.
    Validate {
        n: Option<String>,
        r: Option<String>,
        /// Batch file: one "n r" pair per line, '#' starts a comment.
        #[arg(long, conflicts_with_all = ["n", "r"])]
        file: Option<PathBuf>,
    },
    /// Find the smallest suitable r for n.
    FindR { n: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Test {
            number,
            algorithm,
            max_bits,
            bases,
            random_bases,
            seed,
        } => {
            let options = commands::TestOptions {
                algorithm,
                max_bits,
                force: cli.force,
                bases,
                random_bases,
                seed,
            };
            commands::test(&number, &options)
        }
        Command::Estimate { bits, k } => commands::estimate(&bits, &k),
        Command::Validate { n, r, file } => {
            commands::validate(n.as_deref(), r.as_deref(), file.as_deref())
        }
        Command::FindR { n } => commands::find_r(&n),
    };
    match outcome {
        Ok(report) => {
            match cli.output {
                OutputMode::Text => print!("{}", report.text),
                OutputMode::Structured => println!("{}", report.json),
            }
            ExitCode::from(report.status)
        }
        Err(message) => {
            eprintln!("error: {message}");
            if cli.output == OutputMode::Structured {
                println!("{}", serde_json::json!({ "error": message, "status": 2 }));
            }
            ExitCode::from(2)
        }
    }
}
