use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{RunConfig, Threads};
use dyft_core::analysis::{SignalFamily, Suite};
use dyft_core::KernelConvention;

/// Discrete Yang-Fourier transforms, Mittag-Leffler evaluation and
/// local fractional quadrature.
///
/// Exit codes: 0 ok, 1 check failed, 2 input error, 3 envelope or guard
/// limit exceeded.
#[derive(Debug, Parser)]
#[command(name = "dyft", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward transform of an `index,re,im` signal file.
    Forward(ForwardArgs),
    /// Inverse transform of a spectrum written by `forward`.
    Inverse(InverseArgs),
    /// Forward then inverse, reporting the reconstruction residual.
    Roundtrip(RoundtripArgs),
    /// Evaluates E_α(z).
    Mlf(MlfArgs),
    /// Fixed-partition local fractional integral of sampled values.
    Quad(QuadArgs),
    /// Runs a suite of property checks.
    Check(CheckArgs),
    /// Round-trip residuals over a grid of orders, sizes and signals.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON run configuration; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub convention: Option<KernelConvention>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    #[arg(long, global = true)]
    pub magnitude_guard: Option<f64>,
    /// Worker threads, or `auto`.
    #[arg(long, global = true)]
    pub threads: Option<Threads>,
}

impl Common {
    pub fn flags(&self, alpha: Option<f64>) -> RunConfig {
        RunConfig {
            alpha,
            convention: self.convention,
            rel_tol: self.rel_tol,
            max_terms: self.max_terms,
            magnitude_guard: self.magnitude_guard,
            threads: self.threads,
        }
    }
}

#[derive(Debug, Args)]
pub struct ForwardArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Sample spacing; falls back to the input sidecar, then 1.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct InverseArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[arg(required_unless_present = "generate", conflicts_with = "generate")]
    pub input: Option<PathBuf>,
    /// Uses a generated signal instead of an input file.
    #[arg(long, requires = "n")]
    pub generate: Option<SignalFamily>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = dyft_core::rng::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Writes the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MlfArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub im: f64,
    /// Also prints the multiprecision reference with this many digits.
    #[arg(long)]
    pub oracle_digits: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    pub input: PathBuf,
    /// `uniform:a,b` or a file of partition points.
    #[arg(long)]
    pub partition: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = dyft_core::rng::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.8,1")]
    pub alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
    pub ns: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "constant,impulse,random")]
    pub families: Vec<SignalFamily>,
    #[arg(long, value_delimiter = ',', default_value = "conjugate-pair,negated-principal")]
    pub conventions: Vec<KernelConvention>,
    #[arg(long, default_value_t = dyft_core::rng::DEFAULT_SEED)]
    pub seed: u64,
    /// Table destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}
