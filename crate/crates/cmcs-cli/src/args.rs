use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cmcs",
    version,
    about = "Configurable Markov chain search for three-index assignment problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate benchmark instances.
    Gen(GenArgs),
    /// Search for a good configuration on a set of training instances.
    Train(TrainArgs),
    /// Run one configuration on one instance and record the outcome.
    Solve(SolveArgs),
    /// Build a table of best-known objectives for a set of instances.
    Baseline(BaselineArgs),
    /// Compare configurations over time against a baseline table.
    Eval(EvalArgs),
    /// Print the transition probabilities of a configuration.
    ExportConfig(ExportConfigArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    A,
    B,
    C,
}

impl StrategyArg {
    pub fn letter(self) -> &'static str {
        match self {
            StrategyArg::A => "A",
            StrategyArg::B => "B",
            StrategyArg::C => "C",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ScoringArg {
    /// Mean best objective over the training instances.
    #[default]
    Objective,
    /// Mean percentage gap to a baseline table (requires --baseline).
    RelativeError,
}

#[derive(Args)]
pub struct GenArgs {
    /// Instance families: random, clique, sqrt.
    #[arg(long, value_delimiter = ',', required = true)]
    pub families: Vec<String>,
    /// Instance sizes (side length n).
    #[arg(long, alias = "size", value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Instances per (family, size) combination.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Master seed; per-file seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory, created if missing.
    #[arg(long, default_value = "instances")]
    pub out_dir: PathBuf,
    /// Store sqrt-family costs at fixed-point scale 1000 instead of rounding
    /// to integers.
    #[arg(long)]
    pub sqrt_exact: bool,
}

#[derive(Args)]
pub struct TrainArgs {
    #[arg(long, value_enum)]
    pub strategy: StrategyArg,
    /// Component subset size to search over.
    #[arg(long, default_value_t = 2)]
    pub size: usize,
    /// Directory of training instances (not needed with --dry-run).
    #[arg(long)]
    pub train: Option<PathBuf>,
    /// Directory of validation instances; defaults to the training set.
    #[arg(long)]
    pub validation: Option<PathBuf>,
    /// Wall-clock budget per candidate run, in milliseconds.
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Iteration budget per candidate run (deterministic runs).
    #[arg(long, conflicts_with = "budget_ms")]
    pub budget_iters: Option<u64>,
    /// Wall-clock budget per matrix search, in seconds [default: 240].
    #[arg(long)]
    pub search_seconds: Option<u64>,
    /// Generation-count budget per matrix search (deterministic searches).
    #[arg(long, conflicts_with = "search_seconds")]
    pub generations: Option<u64>,
    /// Candidates per generation; must be even, half descend from the
    /// generation best and half from the global best.
    #[arg(long, default_value_t = 50)]
    pub population: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Parallel evaluation width [default: all available cores].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Restrict the component pool to these names, in the given order.
    #[arg(long, value_delimiter = ',')]
    pub pool: Option<Vec<String>>,
    /// Hill climbers for strategy B's descent, probed in the given order
    /// [default: every hill climber in the pool].
    #[arg(long, value_delimiter = ',')]
    pub vnd: Option<Vec<String>>,
    /// Budget fraction after which strategy B's descent fires.
    #[arg(long, default_value_t = 0.5)]
    pub vnd_threshold: f64,
    /// Strategy B returns the literal polished solution instead of the
    /// better of the two incumbents.
    #[arg(long)]
    pub faithful_b: bool,
    /// Budget share of strategy C's first phase.
    #[arg(long, default_value_t = 0.8)]
    pub split: f64,
    /// Skip identical subset pairs when training strategy C.
    #[arg(long)]
    pub distinct_pairs: bool,
    /// Train strategy C's first stage on the truncated phase-1 budget
    /// instead of the full per-run budget.
    #[arg(long)]
    pub stage1_truncated: bool,
    #[arg(long, value_enum, default_value_t)]
    pub scoring: ScoringArg,
    /// Baseline table for relative-error scoring.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Where to write the winning configuration.
    #[arg(long, default_value = "config.json")]
    pub out: PathBuf,
    /// Also write the training log lines to this file.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Also write the full leaderboard as JSON to this file.
    #[arg(long)]
    pub leaderboard: Option<PathBuf>,
    /// Print the campaign plan (units, stages, minutes) and exit.
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Configuration file, or the name of a builtin (builtin-alternate).
    #[arg(long)]
    pub config: String,
    #[arg(long)]
    pub instance: PathBuf,
    /// Wall-clock budget in milliseconds [default: 1000].
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Iteration budget (deterministic runs).
    #[arg(long, conflicts_with = "budget_ms")]
    pub budget_iters: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Expected strategy; fails if the configuration disagrees.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Strategy B returns the literal polished solution.
    #[arg(long)]
    pub faithful_b: bool,
    /// Where to write the result record [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BaselineArgs {
    /// Instance file or directory of .ap3 files.
    #[arg(long)]
    pub instances: PathBuf,
    /// Configuration used to produce the table.
    #[arg(long, default_value = "builtin-alternate")]
    pub config: String,
    /// Wall-clock budget per run, in milliseconds [default: 1000].
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Iteration budget per run (deterministic tables).
    #[arg(long, conflicts_with = "budget_ms")]
    pub budget_iters: Option<u64>,
    /// Runs per instance; the table keeps the best objective.
    #[arg(long, default_value_t = 3)]
    pub repeats: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Parallel run width [default: all available cores].
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value = "baseline.json")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Configurations to compare: files or builtin names.
    #[arg(long, value_delimiter = ',', required = true)]
    pub configs: Vec<String>,
    /// Instance file or directory of .ap3 files.
    #[arg(long)]
    pub instances: PathBuf,
    /// Baseline table with one entry per instance.
    #[arg(long)]
    pub baseline: PathBuf,
    /// Wall-clock budget per run, in milliseconds.
    #[arg(long, default_value_t = 1000)]
    pub budget_ms: u64,
    /// Runs per (configuration, instance) pair. Use 5 or more for
    /// publication-quality curves; 1 is only good for smoke checks.
    #[arg(long, default_value_t = 1)]
    pub repeats: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Parallel run width [default: all available cores].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Number of log-spaced sample times.
    #[arg(long, default_value_t = 20)]
    pub grid_points: usize,
    /// First sample time, in seconds.
    #[arg(long, default_value_t = 0.01)]
    pub grid_min_s: f64,
    #[arg(long, default_value = "eval.csv")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ExportConfigArgs {
    /// Configuration file, or the name of a builtin (builtin-alternate).
    #[arg(long)]
    pub config: String,
    /// Result record whose transition tallies are reported as observed
    /// frequencies next to the configured probabilities.
    #[arg(long)]
    pub record: Option<PathBuf>,
    /// Where to write the CSV [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}
