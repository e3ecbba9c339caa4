//! `quadseq`: generate quadriphase sequence families, compute their correlation
//! spectra and linear complexities, and check their stated properties.
//!
//! Exit codes: 0 success, 1 a check failed, 2 configuration or input error,
//! 3 I/O error.

mod commands;
mod error;
mod family;
mod setup;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadseq::analysis::KernelInterpretation;
use quadseq::families::FamilyKind;

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "quadseq", version, about = "Quadriphase sequence families over GR(4,n)")]
struct Cli {
    /// Worker threads for parallel sections (default: one per core)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// Ring and family parameters.
#[derive(Args, Clone, Debug)]
pub struct Params {
    /// Subring degree; n = e * m
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of coefficient slots in family L (V uses 1, W ignores it)
    #[arg(long, default_value_t = 1)]
    pub rho: usize,
    /// L, V or W
    #[arg(long)]
    pub family: Option<FamilyKind>,
    /// Use lambda = beta^k instead of the default generator of GR(4,e)'s Teichmuller units
    #[arg(long = "lambda-log")]
    pub lambda_log: Option<u64>,
}

impl Params {
    pub fn ring_dims(&self) -> Result<(usize, usize), CliError> {
        match (self.e, self.m) {
            (Some(e), Some(m)) => Ok((e, m)),
            _ => Err(CliError::Config("--e and --m are required".into())),
        }
    }

    pub fn family_or(&self, default: FamilyKind) -> FamilyKind {
        self.family.unwrap_or(default)
    }
}

/// Sampling controls for workloads too large to enumerate.
#[derive(Args, Clone, Debug)]
pub struct Sampling {
    /// Number of pseudorandom samples; required when a check exceeds the exhaustive budget
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eq2,
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Theorem5,
    Lemma1,
    Kernel,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family to a sequence file
    Gen {
        #[command(flatten)]
        params: Params,
        /// Output path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Correlation spectrum of a family
    Spectrum {
        #[command(flatten)]
        params: Params,
        /// Read the family from a sequence file instead of generating it
        #[arg(long, conflicts_with_all = ["e", "m", "family", "lambda_log"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one verification suite and write a JSON report
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        sampling: Sampling,
        /// Reading of the inverse-power terms in the kernel equation: literal or linearized
        #[arg(long, default_value = "literal")]
        interpretation: KernelInterpretation,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measured linear complexity against the span formulas
    Lincomp {
        #[command(flatten)]
        params: Params,
        #[arg(long, conflicts_with_all = ["e", "m", "family", "lambda_log"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root counts of the kernel equation for every nonzero delta
    KernelCount {
        #[command(flatten)]
        params: Params,
        /// Number of random eta vectors when rho > 1
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value = "literal")]
        interpretation: KernelInterpretation,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe GR(4,n) and the families built on it
    RingInfo {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|err| CliError::Config(format!("--jobs {jobs}: {err}")))?;
    }
    match cli.command {
        Command::Gen { params, out } => commands::generate(&params, out.as_deref()),
        Command::Spectrum { params, input, sampling, format, out } => {
            commands::spectrum(&params, input.as_deref(), &sampling, format, out.as_deref())
        }
        Command::Verify { suite, params, sampling, interpretation, out } => {
            verify::run(suite, &params, &sampling, interpretation, out.as_deref())
        }
        Command::Lincomp { params, input, sampling, format, out } => {
            commands::lincomp(&params, input.as_deref(), &sampling, format, out.as_deref())
        }
        Command::KernelCount { params, sampling, interpretation, format, out } => {
            commands::kernel_count(&params, &sampling, interpretation, format, out.as_deref())
        }
        Command::RingInfo { params, out } => commands::ring_info(&params, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("quadseq: {err}");
            err.exit_code()
        }
    }
}
