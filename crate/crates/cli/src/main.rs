//! Command-line front end: reads a JSON job file, runs one computation and
//! prints a report. Exit status is 0 when every verification passes, 1 when
//! one fails, 2 for malformed input and 3 for internal errors.

mod commands;
mod input;

use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopf_poisson::DegreeClass;

use crate::commands::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "hopf-poisson", version, about = "Poisson algebras under finite-dimensional Hopf actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable report on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Degree bound for sampled checks and fixed rings
    #[arg(long, global = true, default_value_t = 3)]
    maxdeg: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity, grading, filtration and unimodularity
    Check { input: PathBuf },
    /// Modular derivation
    Modular { input: PathBuf },
    /// Rees algebra of the weight filtration
    Rees { input: PathBuf },
    /// Associated graded algebra
    Gr { input: PathBuf },
    /// Quadratic quantization at a scalar lambda
    Quantize {
        input: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Module-algebra and Poisson compatibility of an action
    VerifyAction { input: PathBuf },
    /// Fixed ring generators and their brackets
    FixedRing { input: PathBuf },
    /// Extends a linear action to the Rees algebra and verifies it
    ExtendRees { input: PathBuf },
    /// Taft-equivariant bracket families on k[u1..um]
    ClassifyTaft {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        degree: DegreeClass,
        /// Order of the Taft algebra
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Enveloping algebra presentation and PBW check
    Envelope {
        input: PathBuf,
        /// Also evaluate the conditions for extending the action
        #[arg(long)]
        check_extension: bool,
    },
    /// Hopf algebra axioms
    HopfVerify { input: PathBuf },
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    use Command::*;
    let maxdeg = cli.maxdeg;
    match &cli.command {
        Check { input } => commands::check(&commands::load(input)?),
        Modular { input } => commands::modular(&commands::load(input)?),
        Rees { input } => commands::rees(&commands::load(input)?),
        Gr { input } => commands::gr(&commands::load(input)?),
        Quantize { input, lambda } => commands::quantize(&commands::load(input)?, lambda, maxdeg),
        VerifyAction { input } => commands::verify_action(&commands::load(input)?, maxdeg),
        FixedRing { input } => commands::fixed_ring(&commands::load(input)?, maxdeg),
        ExtendRees { input } => commands::extend_rees(&commands::load(input)?, maxdeg),
        ClassifyTaft { vars, degree, n } => commands::classify_taft(*vars, *degree, *n),
        Envelope { input, check_extension } => {
            commands::envelope(&commands::load(input)?, *check_extension, maxdeg)
        }
        HopfVerify { input } => commands::hopf_verify(&commands::load(input)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(report)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Err(Failure::Schema(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
