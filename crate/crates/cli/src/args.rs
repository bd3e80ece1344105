use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwcache_core::OptimizerConfig;

#[derive(Debug, Parser)]
#[command(name = "gwcache", version, about = "Rate-memory bounds and protocol simulation for two-receiver caching of correlated files")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate rate-memory curves over a memory grid and write CSV (and optionally SVG).
    Sweep(SweepArgs),
    /// Lower bounds at one memory value, as JSON.
    Bounds(PointArgs),
    /// Achievable and baseline rates at one memory value, as JSON.
    Achievable(PointArgs),
    /// Run one auxiliary-channel optimization and report the witness.
    Optimize(OptimizeArgs),
    /// Run the caching protocol bit by bit and report measured rates.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Doubly symmetric binary source with flip probability p0 in [0, 1/2].
    #[arg(long, conflicts_with = "pmf")]
    pub p0: Option<f64>,
    /// Joint pmf file: JSON {"n1": .., "n2": .., "p": [[row], ...]}.
    #[arg(long)]
    pub pmf: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OptArgs {
    /// Optimizer restarts.
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Seed for restarts and simulation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Auxiliary alphabet size (default |X1||X2| + 2).
    #[arg(long)]
    pub nu: Option<usize>,
    /// Iteration cap per restart and penalty round.
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
}

impl OptArgs {
    pub fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            seed: self.seed,
            nu: self.nu,
            max_iters: self.max_iters,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Curve {
    Lb,
    LbGw,
    UbGw,
    Tc,
    LfuUm,
}

pub const ALL_CURVES: [Curve; 5] = [Curve::Lb, Curve::LbGw, Curve::UbGw, Curve::Tc, Curve::LfuUm];

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Memory grid start:stop:step in bits per symbol; stop may not exceed H(X1,X2).
    #[arg(long)]
    pub grid: String,
    /// Curves to evaluate (default all); omitted curves are left blank.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub curves: Vec<Curve>,
    #[command(flatten)]
    pub opt: OptArgs,
    /// CSV output path (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render an SVG line chart here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Cache size per receiver, bits per symbol.
    #[arg(long)]
    pub memory: f64,
    /// Also evaluate the achievable rate at this common-description rate (needs --rho).
    #[arg(long, requires = "rho")]
    pub r0: Option<f64>,
    /// Private-description rate for --r0.
    #[arg(long, requires = "r0")]
    pub rho: Option<f64>,
    #[command(flatten)]
    pub opt: OptArgs,
    /// JSON output path (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    /// Largest M with coinciding lower bounds, Markov channels.
    M1,
    /// Same, restricted to symmetric channels; adds the gap certificate.
    M1Symmetric,
    /// GW-class lower bound at --memory.
    LbGw,
    /// GW-LFU-TC rate at --memory over symmetric channels.
    UbGw,
    /// Search for a channel whose corner meets (I(X1;X2), H(X1|X2), H(X2|X1)).
    MiCorner,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,
    /// Memory value for lb-gw and ub-gw.
    #[arg(long)]
    pub memory: Option<f64>,
    /// Include per-restart traces in the report.
    #[arg(long)]
    pub traces: bool,
    #[command(flatten)]
    pub opt: OptArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// DSBS with flip probability p0, realized through its Wyner channel.
    #[arg(long, conflicts_with = "shared")]
    pub p0: Option<f64>,
    /// Shared-component source biases pv,p1,p2 (default 0.5,0.5,0.5).
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub shared: Option<Vec<f64>>,
    /// Single cache size per receiver, bits per symbol.
    #[arg(long, conflicts_with = "grid")]
    pub memory: Option<f64>,
    /// Memory grid start:stop:step.
    #[arg(long)]
    pub grid: Option<String>,
    /// Blocklength in symbols.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate every fair-bit realization of this blocklength (at most 8) instead of sampling.
    #[arg(long)]
    pub exhaustive: Option<usize>,
    /// With --exhaustive: corrupt one cached bit, which must be detected.
    #[arg(long, requires = "exhaustive")]
    pub mutate: bool,
    /// Write delivery codewords here in the binary transcript format.
    #[arg(long)]
    pub transcripts: Option<PathBuf>,
    /// JSON output path (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
