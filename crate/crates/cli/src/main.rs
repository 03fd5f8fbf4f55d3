//! Batch CLI for exact relative-invariant computations.
//!
//! Every subcommand takes a JSON group-spec file as its first argument.
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on
//! success/PASS, 1 on validation or verification failure, 2 on usage or
//! parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relinv_core::specfile::{load_spec, LoadedSpec};
use relinv_core::{certify, decompose, main1_generators, main2_generators, reynolds, GeneratorSet};

#[derive(Parser)]
#[command(
    name = "relinv",
    version,
    about = "Exact invariants and relative invariants of linear group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Pairwise construction when m = 2, general construction otherwise
    Auto,
    /// Index-2 pairwise construction (requires m = 2)
    Main1,
    /// General construction over minimal exponent patterns
    Main2,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebraic setup declared in a spec file
    Validate {
        /// Group spec file (JSON)
        file: PathBuf,
    },
    /// Apply the relative Reynolds projection R_j to an expression
    Reynolds {
        file: PathBuf,
        /// Relative index, 0 <= j < m
        #[arg(short = 'j', long = "j")]
        j: u64,
        /// Polynomial expression in the spec's variables
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Also verify that the input is H-invariant
        #[arg(long)]
        check: bool,
    },
    /// Split an H-invariant expression into its m relative components
    Decompose {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Verify H-invariance of the input and the component properties
        #[arg(long)]
        check: bool,
    },
    /// Compute a generating set of the full-group invariant ring
    GammaBasis {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Certify the generating set against brute-force invariants
    Verify {
        file: PathBuf,
        /// Degree bound for the truncated comparison
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Drop a generator (by its canonical text) before certifying
        #[arg(long)]
        drop: Vec<String>,
    },
}

/// Failures that are not usage errors: validation or verification said no.
struct Failed;

enum CliError {
    Usage(String),
    Failure(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn load(file: &PathBuf) -> Result<LoadedSpec, CliError> {
    load_spec(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))
}

/// Loads a spec and insists that validation passes, as every computation
/// after `validate` assumes a well-formed setup.
fn load_valid(file: &PathBuf) -> Result<LoadedSpec, CliError> {
    let spec = load(file)?;
    let report = spec.group.validate(&spec.h_basis);
    if !report.passed() {
        return Err(CliError::Failure(format!(
            "{} failed validation:\n{report}",
            file.display()
        )));
    }
    Ok(spec)
}

fn generator_set(spec: &LoadedSpec, method: Method) -> Result<GeneratorSet, CliError> {
    match method {
        Method::Main1 => {
            main1_generators(&spec.group, &spec.h_basis).map_err(|e| CliError::Usage(e.to_string()))
        }
        Method::Main2 => Ok(main2_generators(&spec.group, &spec.h_basis)),
        Method::Auto => {
            if spec.group.m() == 2 {
                main1_generators(&spec.group, &spec.h_basis)
                    .map_err(|e| CliError::Usage(e.to_string()))
            } else {
                Ok(main2_generators(&spec.group, &spec.h_basis))
            }
        }
    }
}

fn run(cli: Cli) -> Result<Result<(), Failed>, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let spec = load(&file)?;
            let report = spec.group.validate(&spec.h_basis);
            println!("{report}");
            Ok(if report.passed() { Ok(()) } else { Err(Failed) })
        }
        Command::Reynolds {
            file,
            j,
            expr,
            check,
        } => {
            let spec = load_valid(&file)?;
            if j >= spec.group.m() {
                return usage(format!(
                    "index j = {j} out of range; the group has index m = {}",
                    spec.group.m()
                ));
            }
            let f = relinv_core::parse_poly(&expr, &spec.table)
                .map_err(|e| CliError::Usage(format!("expression: {e}")))?;
            if check && !spec.group.h_fixes(&f) {
                return Err(CliError::Failure("input is not H-invariant".into()));
            }
            let result = reynolds(&spec.group, j, &f).expect("range checked above");
            println!("{result}");
            Ok(Ok(()))
        }
        Command::Decompose { file, expr, check } => {
            let spec = load_valid(&file)?;
            let f = relinv_core::parse_poly(&expr, &spec.table)
                .map_err(|e| CliError::Usage(format!("expression: {e}")))?;
            if check && !spec.group.h_fixes(&f) {
                return Err(CliError::Failure("input is not H-invariant".into()));
            }
            let d = decompose(&spec.group, &f);
            if check {
                d.verify(&spec.group).map_err(CliError::Failure)?;
            }
            for (j, component) in d.components().iter().enumerate() {
                println!("j={j}: {component}");
            }
            Ok(Ok(()))
        }
        Command::GammaBasis { file, method } => {
            let spec = load_valid(&file)?;
            let set = generator_set(&spec, method)?;
            for gen in set.elements() {
                println!("{}\t# {}", gen.poly, gen.provenance);
            }
            Ok(Ok(()))
        }
        Command::Verify { file, degree, drop } => {
            let spec = load_valid(&file)?;
            let mut set = generator_set(&spec, Method::Auto)?;
            for name in &drop {
                if !set.remove_by_text(name) {
                    return usage(format!("--drop {name:?} matched no generator"));
                }
            }
            let report = certify(&spec.group, &set, degree)
                .map_err(|e| CliError::Failure(format!("oracle not applicable: {e}")))?;
            println!("{report}");
            Ok(if report.pass { Ok(()) } else { Err(Failed) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
