//! `upr`: PageRank of undirected graphs and the degree-distribution bounds.
//!
//! Exit statuses: 0 success/pass, 1 check failure, 2 input error,
//! 3 non-convergence.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "upr", version, about = "Personalized PageRank on undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the PageRank vector.
    Rank(GraphArgs),
    /// Compute PageRank and check the two-sided bound on |pi - f|_1.
    Check(GraphArgs),
    /// Verify the L1 operator norms of I - cA^T and its inverse (n <= 64).
    Norms(GraphArgs),
    /// Run a batch sweep and emit one row per instance.
    Sweep(SweepArgs),
    /// Print a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Args, Debug, Clone)]
struct GraphSource {
    /// Generator spec, e.g. `path:3`, `k_regular_circulant:20,4`, `erdos_renyi:50,0.1,ergodic`.
    #[arg(long = "gen", value_name = "FAMILY:PARAMS", conflicts_with = "input")]
    generator: Option<String>,
    /// Edge-list file.
    #[arg(long, value_name = "PATH")]
    input: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Damping constant in (0, 1).
    #[arg(long, default_value_t = upr_core::solver::DEFAULT_DAMPING)]
    c: f64,
    #[arg(long, default_value_t = upr_core::solver::DEFAULT_TOL)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = upr_core::solver::DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Solver; defaults to `power` for rank and `linear` for check.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Personalization: `uniform`, `degree` or `file:<path>`.
    #[arg(long = "v", default_value = "uniform", value_name = "SOURCE")]
    v: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = upr_core::analysis::DEFAULT_SLACK)]
    slack: f64,
}

#[derive(Args, Debug, Clone)]
struct SweepArgs {
    /// TOML sweep file; flags below override its fields.
    #[arg(long, value_name = "PATH")]
    spec: Option<std::path::PathBuf>,
    /// Graph family (repeatable).
    #[arg(long = "gen", value_name = "FAMILY:PARAMS")]
    families: Vec<String>,
    /// Comma-separated damping constants.
    #[arg(long = "c-values", value_delimiter = ',')]
    c_values: Option<Vec<f64>>,
    /// Comma-separated strategies: uniform, degree, point_mass:<vertex>, dirichlet_random:<seed>.
    #[arg(long, value_delimiter = ',')]
    strategies: Option<Vec<String>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    slack: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// `csv` and `json` emit rows; `text` prints a tightness summary.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Power,
    Linear,
    Oracle,
}

impl From<MethodArg> for upr_core::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Power => upr_core::Method::Power,
            MethodArg::Linear => upr_core::Method::Linear,
            MethodArg::Oracle => upr_core::Method::DenseOracle,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Rank(args) => commands::rank(&args),
        Command::Check(args) => commands::check(&args),
        Command::Norms(args) => commands::norms(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Gen(args) => commands::gen(&args),
    };
    match outcome {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            ExitCode::from(e.exit)
        }
    }
}
