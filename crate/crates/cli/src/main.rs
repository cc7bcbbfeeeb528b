//! `serialsum`: evaluate and cross-check the limit sums `F_ℓ(λ; S)` and run
//! the AR(k) toolkit from the command line.
//!
//! Exit codes: 0 success, 1 numerical or check failure, 2 usage error.

mod commands;
mod output;
mod parse;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use std::time::Instant;

use commands::{CliError, Report};
use output::OutputEnvelope;

#[derive(Debug, Parser)]
#[command(name = "serialsum", version, about = "Limit sums of cyclic geometric lattice products")]
struct Cli {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F_ℓ(λ; S) in closed form.
    Eval(EvalArgs),
    /// Independent oracles: the lattice series and exact finite sums.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check the closed form at ℓ = 5 or 6 against the lattice series.
    Conjecture(ConjectureArgs),
    /// AR(k) roots, autocorrelations and simulation.
    #[command(subcommand)]
    Ar(ArCommand),
}

#[derive(Debug, Args)]
#[group(id = "shift", required = true, multiple = false)]
pub struct ShiftArgs {
    /// Aggregated shift S = |Σ s_i|.
    #[arg(long = "S", group = "shift", allow_hyphen_values = true)]
    pub s: Option<i64>,
    /// Individual shifts s_1..s_ℓ, one per root slot.
    #[arg(long, group = "shift", allow_hyphen_values = true)]
    pub shifts: Option<String>,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    /// Comma-separated roots; complex values as `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: String,
    /// Multiplicity of each listed root (default 1 each).
    #[arg(long)]
    pub mult: Option<String>,
    /// Accept root sets that are not closed under conjugation.
    #[arg(long)]
    pub allow_complex_result: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub roots: RootArgs,
    #[command(flatten)]
    pub shift: ShiftArgs,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Truncated infinite lattice sum.
    Series(SeriesArgs),
    /// Exact finite-n cyclic sum.
    Finite(FiniteArgs),
    /// n-slope of the finite sum, (T(2n) - T(n)) / n.
    Slope(SlopeArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub roots: RootArgs,
    #[command(flatten)]
    pub shift: ShiftArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FiniteArgs {
    /// Roots in slot order; duplicates allowed.
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: String,
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: String,
    #[arg(long)]
    pub n: usize,
    /// Upper-limit adjustments d_m ≤ 0 (default all zero).
    #[arg(long, allow_hyphen_values = true)]
    pub adjust: Option<String>,
    /// Use the literal O(n^ℓ) enumeration.
    #[arg(long)]
    pub direct: bool,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: String,
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: String,
    #[arg(long, allow_hyphen_values = true)]
    pub adjust: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub n_base: usize,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum ArCommand {
    /// Characteristic roots and stationarity.
    Roots(AlphaArgs),
    /// Theoretical autocorrelations and the A_i coefficients.
    Acf(AcfArgs),
    /// Simulate a series and write it as CSV.
    Simulate(SimulateArgs),
    /// Compare simulated and theoretical autocorrelations.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    /// AR coefficients α_1..α_k.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct AcfArgs {
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[arg(long, default_value_t = 10)]
    pub jmax: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub alpha: AlphaArgs,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub n: usize,
    /// First seed; batches use seed, seed+1, ….
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent batches.
    #[arg(long, default_value_t = 20)]
    pub seeds: usize,
    #[arg(long, default_value_t = 3)]
    pub jmax: usize,
    /// Largest acceptable |z|.
    #[arg(long, default_value_t = 4.0)]
    pub z_max: f64,
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Eval(args) => commands::eval(args),
        Command::Oracle(OracleCommand::Series(args)) => commands::oracle_series(args),
        Command::Oracle(OracleCommand::Finite(args)) => commands::oracle_finite(args),
        Command::Oracle(OracleCommand::Slope(args)) => commands::oracle_slope(args),
        Command::Conjecture(args) => commands::conjecture(args),
        Command::Ar(ArCommand::Roots(args)) => commands::ar_roots(args),
        Command::Ar(ArCommand::Acf(args)) => commands::ar_acf(args),
        Command::Ar(ArCommand::Simulate(args)) => commands::ar_simulate(args),
        Command::Ar(ArCommand::Check(args)) => commands::ar_check(args),
    }
}

fn emit(json: bool, envelope: OutputEnvelope, text: &str) {
    if json {
        println!("{}", serde_json::to_string_pretty(&envelope).expect("envelope serializes"));
    } else if !text.is_empty() {
        print!("{text}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(report) => {
            let code = if report.success { 0 } else { 1 };
            let envelope = OutputEnvelope {
                command: report.command.to_string(),
                inputs: report.inputs,
                result: report.result,
                err_estimate: report.err_estimate,
                elapsed_ms,
            };
            emit(cli.json, envelope, &report.text);
            ExitCode::from(code)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(failure)) => {
            eprintln!("error: {}", failure.message);
            let envelope = OutputEnvelope {
                command: failure.command.to_string(),
                inputs: failure.inputs,
                result: failure.payload,
                err_estimate: failure.err_estimate,
                elapsed_ms,
            };
            if cli.json {
                emit(true, envelope, "");
            }
            ExitCode::from(1)
        }
    }
}
