//! `qsk`: compile, verify, sweep and simulate logical Schur-kernel circuits.
//!
//! Exit codes: 0 ok, 1 internal error, 2 usage error, 3 verification failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsk_core::{SelectionPolicy, StrategyId};

#[derive(Parser, Debug)]
#[command(name = "qsk", version, about = "Logical compilation of Clifford Schur kernels on the iceberg code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a verified physical circuit for one placement.
    Compile(CompileArgs),
    /// Check a circuit file against a kernel.
    Verify(VerifyArgs),
    /// Depth and two-qubit counts over Hadamard counts and placements.
    Sweep(SweepArgs),
    /// Noisy Monte Carlo comparison of the mid baseline and PBS.
    Simulate(SimulateArgs),
    /// List the eight logical-constraint solutions for one placement.
    EnumerateLcs(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Rule,
    Empirical,
}

impl From<PolicyArg> for SelectionPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Rule => SelectionPolicy::RuleBased,
            PolicyArg::Empirical => SelectionPolicy::Empirical,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Low,
    Mid,
    High,
}

impl From<StrategyArg> for StrategyId {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Low => StrategyId::Low,
            StrategyArg::Mid => StrategyId::Mid,
            StrategyArg::High => StrategyId::High,
        }
    }
}

/// `--ih` or `--h` with a sampling seed.
#[derive(Args, Debug, Clone)]
pub struct PlacementArgs {
    /// Number of logical qubits (even).
    #[arg(long)]
    pub k: usize,
    /// Hadamard positions as a comma list, e.g. `1,3` (empty for none).
    #[arg(long, conflicts_with = "h")]
    pub ih: Option<String>,
    /// Hadamard count; the placement is drawn with `--placement-seed`.
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub placement_seed: u64,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[command(flatten)]
    pub placement: PlacementArgs,
    /// Force one strategy.
    #[arg(long, conflicts_with = "policy")]
    pub strategy: Option<StrategyArg>,
    /// Choose the strategy from (k, h); the default.
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    /// Write the circuit here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Metrics line format (on stderr).
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub placement: PlacementArgs,
    /// Circuit JSON file.
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub k: usize,
    /// Comma list of low, mid, high. Defaults to all three unless
    /// `--lcs-all` is given.
    #[arg(long, value_delimiter = ',')]
    pub strategies: Vec<StrategyArg>,
    /// Add all eight logical-constraint solutions.
    #[arg(long)]
    pub lcs_all: bool,
    /// Every placement for each h.
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Seeded placements per h (all of them when there are fewer).
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub k: usize,
    /// Fixed placement; otherwise h = 1..k-1 with one seeded placement each.
    #[arg(long, conflicts_with = "h")]
    pub ih: Option<String>,
    /// Fixed Hadamard count.
    #[arg(long)]
    pub h: Option<usize>,
    /// Seed for drawing placements; defaults to `--seed`.
    #[arg(long)]
    pub placement_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "rule")]
    pub policy: PolicyArg,
    #[arg(long, default_value_t = 0.01)]
    pub p1: f64,
    #[arg(long, default_value_t = 0.01)]
    pub p2: f64,
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub placement: PlacementArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Internal(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<qsk_core::Error> for Failure {
    fn from(e: qsk_core::Error) -> Self {
        use qsk_core::Error::*;
        match e {
            DimensionMismatch { .. }
            | WireOutOfRange { .. }
            | DegenerateTwoQubitGate(_)
            | UnknownGate(_)
            | GateArity { .. }
            | EmptyRegister
            | Json(_)
            | InvalidPauliString(_)
            | KernelTooSmall(_)
            | InvalidPlacement(_)
            | OddK(_)
            | LogicalIndex { .. }
            | ParityViolation { .. }
            | HadamardCount { .. }
            | InvalidProbability(_)
            | NoShots => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile(a) => commands::compile(a),
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::EnumerateLcs(a) => commands::enumerate_lcs(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
