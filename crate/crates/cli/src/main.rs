//! Batch command-line front end: solve instances, run reductions, verify
//! reduction corpora, generate instances, print graph statistics.
//!
//! Exit codes: 0 command succeeded (a solve's "no" is a success), 1
//! verification found a mismatch, 2 input error, 3 resource cap exceeded.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mepvcb",
    about = "Exact solver and reduction workbench for the matching-constrained \
             edge-weighted partial vertex cover problem on bipartite graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    OracleOnly,
    FptVge2,
    ComplementBudget,
}

impl StrategyArg {
    fn to_strategy(self) -> mepvcb::Strategy {
        match self {
            StrategyArg::Auto => mepvcb::Strategy::Auto,
            StrategyArg::OracleOnly => mepvcb::Strategy::OracleOnly,
            StrategyArg::FptVge2 => mepvcb::Strategy::FptVge2,
            StrategyArg::ComplementBudget => mepvcb::Strategy::ComplementBudget,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StrategyArg::Auto => "auto",
            StrategyArg::OracleOnly => "oracle-only",
            StrategyArg::FptVge2 => "fpt-vge2",
            StrategyArg::ComplementBudget => "complement-budget",
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file to solve.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto", env = "MEPVCB_STRATEGY")]
    strategy: StrategyArg,
    /// Vertex cap for the subset-enumeration oracle.
    #[arg(long, default_value_t = 20, env = "MEPVCB_ORACLE_CAP")]
    oracle_cap: usize,
    /// Seed recorded in reports (search orderings are deterministic).
    #[arg(long, default_value_t = 0, env = "MEPVCB_SEED")]
    seed: u64,
    /// Write a machine-readable report to this path.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Reduction name (see `verify --list` for the full set).
    reduction: String,
    /// Source instance file.
    input: PathBuf,
    /// Target instance file; a `<target>.report.json` sidecar is written
    /// next to it.
    output: PathBuf,
    /// Apply the deliberately broken variant (testing only).
    #[arg(long)]
    mutate: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reduction name, or `all`.
    #[arg(default_value = "all")]
    reduction: String,
    /// Random corpus instances per reduction (fixed witnesses are always
    /// included).
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0, env = "MEPVCB_SEED")]
    seed: u64,
    #[arg(long, default_value_t = 20, env = "MEPVCB_ORACLE_CAP")]
    oracle_cap: usize,
    /// Item cap for the knapsack and subset-sum oracles.
    #[arg(long, default_value_t = 24)]
    item_cap: usize,
    /// Worker threads for corpus verification.
    #[arg(long, default_value_t = 1, env = "MEPVCB_WORKERS")]
    workers: usize,
    /// Verify the deliberately broken variant instead (testing only); the
    /// run is expected to fail with a witness.
    #[arg(long)]
    mutate: bool,
    /// Write the first mismatch witness to this path.
    #[arg(long, default_value = "mismatch-witness.txt")]
    witness_out: PathBuf,
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// List the available reduction names and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    RandomBipartite,
    TwoPaths,
    Regular,
    Complete,
    Bkp,
    Subsetsum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BkpLevelArg {
    Signed,
    Positive,
    Ordered,
    Gapped,
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family.
    family: FamilyArg,
    /// Output instance file.
    output: PathBuf,
    #[arg(long, default_value_t = 0, env = "MEPVCB_SEED")]
    seed: u64,
    /// Left side size (random-bipartite, complete).
    #[arg(long, default_value_t = 4)]
    left: usize,
    /// Right side size (random-bipartite, complete).
    #[arg(long, default_value_t = 4)]
    right: usize,
    /// Edge count (random-bipartite).
    #[arg(long, default_value_t = 8)]
    edges: usize,
    /// Number of 2-paths (two-paths family).
    #[arg(long, default_value_t = 5)]
    paths: usize,
    /// Side size (regular family).
    #[arg(long, default_value_t = 5)]
    side: usize,
    /// Degree (regular family).
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 1)]
    min_weight: i64,
    #[arg(long, default_value_t = 9)]
    max_weight: i64,
    /// Override the generated vertex budget.
    #[arg(long)]
    k1: Option<usize>,
    /// Override the generated coverage threshold.
    #[arg(long)]
    k2: Option<i64>,
    /// Override the generated matching threshold.
    #[arg(long)]
    k3: Option<i64>,
    /// Item count (bkp, subsetsum).
    #[arg(long, default_value_t = 5)]
    items: usize,
    /// Profit magnitude bound (bkp) or value magnitude bound (subsetsum).
    #[arg(long, default_value_t = 9)]
    magnitude: i64,
    /// Restriction level of generated knapsack instances.
    #[arg(long, value_enum, default_value = "signed")]
    level: BkpLevelArg,
    /// Shorthand for `--level gapped`.
    #[arg(long)]
    gap: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Instance file to profile.
    input: PathBuf,
    /// Vertex cap for the exact induced matching computation.
    #[arg(long, default_value_t = 24)]
    induced_cap: usize,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print the verdict with its certificate.
    Solve(SolveArgs),
    /// Transform an instance and write the image plus a report sidecar.
    Reduce(ReduceArgs),
    /// Check reductions against brute-force oracles on seeded corpora.
    Verify(VerifyArgs),
    /// Generate a random or structured instance file.
    Generate(GenerateArgs),
    /// Print graph statistics and normalization flags for an instance.
    Stats(StatsArgs),
}

/// Failures mapped to exit codes; a verify mismatch is returned as a
/// regular outcome, not an error.
pub enum CommandError {
    /// Exit 2: unreadable files, malformed instances, invalid parameters,
    /// violated reduction preconditions.
    Input(String),
    /// Exit 3: an oracle cap was exceeded.
    Cap(String),
}

impl CommandError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CommandError::Input(_) => ExitCode::from(2),
            CommandError::Cap(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CommandError::Input(m) | CommandError::Cap(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => commands::cmd_solve(&args),
        Command::Reduce(args) => commands::cmd_reduce(&args),
        Command::Verify(args) => commands::cmd_verify(&args),
        Command::Generate(args) => commands::cmd_generate(&args),
        Command::Stats(args) => commands::cmd_stats(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}
