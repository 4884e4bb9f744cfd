//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "detmax",
    version,
    about = "Composable core-sets for determinant (volume) maximization",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one core-set and report indices, log-volume, and swap count
    Coreset(CoresetArgs),
    /// Simulate the partition / per-part core-set / union / aggregate workflow
    Pipeline(PipelineArgs),
    /// Check the directional-height and composability guarantees (exit 5 on violation)
    Verify(VerifyArgs),
    /// Time greedy against local search on one data set
    Bench(BenchArgs),
    /// Exact optimum by exhaustive enumeration (small instances only)
    Oracle(OracleArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Whitespace,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgChoice {
    Greedy,
    #[value(alias = "ls")]
    LocalSearch,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggChoice {
    Greedy,
    #[value(alias = "ls")]
    LocalSearch,
    BruteForce,
}

/// Where the points come from.
#[derive(Args, Debug, Clone)]
pub struct DatasetArgs {
    /// Load points from a file, one point per row
    #[arg(long, value_name = "PATH", global = false)]
    pub data: Option<PathBuf>,

    /// Input format for --data
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub data_format: DataFormat,

    /// Skip the first line of --data
    #[arg(long)]
    pub header: bool,

    /// Generate points: gaussian:N,D | clustered:N,D,CLUSTERS,SPREAD | adversarial:N,D
    #[arg(long, value_name = "SPEC", conflicts_with = "data")]
    pub synthetic: Option<String>,

    /// Rescale every row to unit norm
    #[arg(long)]
    pub unit_norm: bool,

    /// Kernelize the points: rbf:SIGMA
    #[arg(long, value_name = "KERNEL")]
    pub kernel: Option<String>,
}

/// Report destination and shape.
#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Suppress the human-readable summary on stderr
    #[arg(long)]
    pub quiet: bool,

    /// Null out wall-clock fields so reruns are byte-identical
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct CoresetArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    /// Core-set size
    #[arg(long)]
    pub k: usize,

    /// Construction algorithm
    #[arg(long, value_enum, default_value_t = AlgChoice::Greedy)]
    pub alg: AlgChoice,

    /// Local-search accuracy parameter
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    /// Final subset size
    #[arg(long)]
    pub k: usize,

    /// Number of partitions
    #[arg(long, default_value_t = 10)]
    pub m: usize,

    /// Repetitions (fresh random partition each)
    #[arg(long, default_value_t = 10)]
    pub reps: usize,

    /// Local-search accuracy parameter
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,

    /// Aggregation algorithm when --compare is not used
    #[arg(long, value_enum, default_value_t = AggChoice::Greedy)]
    pub agg_alg: AggChoice,

    /// Core-set algorithm when --compare is not used
    #[arg(long, value_enum, default_value_t = AlgChoice::Greedy)]
    pub alg: AlgChoice,

    /// Configuration pair ALG_a/ALG_c (e.g. GD/GD, LS/LS, GD/LS); repeat to compare
    #[arg(long, value_name = "PAIR")]
    pub compare: Vec<String>,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: VerifyCmd,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Directional-height floor: h(C,H) >= h(P,H) / alpha over sampled subspaces
    Height(HeightArgs),
    /// Composability bound: brute-forced determinant ratio <= alpha^(2k)
    Compose(ComposeArgs),
}

#[derive(Args, Debug)]
pub struct HeightArgs {
    #[command(flatten)]
    pub dataset: OptionalDatasetArgs,

    /// Core-set algorithm under test
    #[arg(long, value_enum, default_value_t = AlgChoice::LocalSearch)]
    pub alg: AlgChoice,

    /// Subset size; fixed for every instance when given
    #[arg(long)]
    pub k: Option<usize>,

    /// Local-search accuracy parameter
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,

    /// Total subspace trials (spread over instances in suite mode)
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,

    /// Random instances to test when no dataset is given
    #[arg(long, default_value_t = 50)]
    pub instances: usize,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

/// Dataset flags where a dataset is optional (the verifier generates its
/// own random instances when none is given).
#[derive(Args, Debug, Clone)]
pub struct OptionalDatasetArgs {
    /// Load points from a file, one point per row
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,

    /// Input format for --data
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub data_format: DataFormat,

    /// Skip the first line of --data
    #[arg(long)]
    pub header: bool,

    /// Generate points: gaussian:N,D | clustered:N,D,CLUSTERS,SPREAD | adversarial:N,D
    #[arg(long, value_name = "SPEC", conflicts_with = "data")]
    pub synthetic: Option<String>,

    /// Rescale every row to unit norm
    #[arg(long)]
    pub unit_norm: bool,
}

#[derive(Args, Debug)]
pub struct ComposeArgs {
    /// Ambient dimension of the generated instances
    #[arg(long, default_value_t = 5)]
    pub d: usize,

    /// Subset size
    #[arg(long, default_value_t = 2)]
    pub k: usize,

    /// Number of parts per instance
    #[arg(long, default_value_t = 3)]
    pub m: usize,

    /// Points per part
    #[arg(long, default_value_t = 8)]
    pub n_per_part: usize,

    /// Core-set algorithm under test
    #[arg(long, value_enum, default_value_t = AlgChoice::LocalSearch)]
    pub alg: AlgChoice,

    /// Local-search accuracy parameter
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,

    /// Random instances to test
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    /// Subset size
    #[arg(long)]
    pub k: usize,

    /// Local-search accuracy parameter
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,

    /// Subset size
    #[arg(long)]
    pub k: usize,

    /// Cap on the number of enumerated subsets
    #[arg(long, default_value_t = 2_000_000)]
    pub cap: u64,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}
