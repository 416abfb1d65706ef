//! Command-line front end.

mod commands;
pub mod json;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algebra::Rational;
use crate::analysis::{AnalysisError, RadiusMethod};
use crate::engine::EngineError;
use crate::oracle::OracleError;

pub use output::{float17, write_atomic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

fn engine_exit(e: &EngineError) -> i32 {
    match e {
        EngineError::NonPositiveMu(_)
        | EngineError::StateOutOfRange { .. }
        | EngineError::OrderGuard { .. }
        | EngineError::NotGroundState
        | EngineError::TooManyTerms { .. }
        | EngineError::OrderTooLow => EXIT_USAGE,
        _ => EXIT_COMPUTATION,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Engine(e) => engine_exit(e),
            CliError::Analysis(AnalysisError::Engine(e)) => engine_exit(e),
            CliError::Analysis(
                AnalysisError::InvalidRange(_)
                | AnalysisError::OutsideWindow(_)
                | AnalysisError::OrderTooLow { .. }
                | AnalysisError::StructureOrder(_),
            ) => EXIT_USAGE,
            CliError::Oracle(OracleError::InvalidConfig(_)) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_COMPUTATION,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::parse(s).map_err(|_| format!("{s:?} is not an exact rational (use p/q or a decimal)"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ShootingArgs {
    /// Integration start for the shooting oracle.
    #[arg(long)]
    x_max: Option<f64>,
    /// RK4 step.
    #[arg(long)]
    step: Option<f64>,
    /// Bisection tolerance on kappa.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(name = "ppt", version, about = "Perturbation series for the quartically perturbed Poschl-Teller well")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy moments tau^(0..K), symbolic in a or numeric at fixed mu.
    Expand(ExpandArgs),
    /// Ground-state kappa and E at (mu, lambda, K), optionally against the oracle.
    Energy(EnergyArgs),
    /// CSV samples of the series wave function.
    Wavefunction(WaveArgs),
    /// Exact unperturbed bound state.
    Unperturbed(UnperturbedArgs),
    /// Series-versus-oracle error scan over lambda.
    Verify(VerifyArgs),
    /// Tail, radius and structure diagnostics.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("strength").required(true).args(["mu", "a", "symbolic"])))]
struct ExpandArgs {
    #[arg(long, value_parser = parse_rational)]
    mu: Option<Rational>,
    /// Strength parameter a = (2 mu + 1)/4.
    #[arg(long, value_parser = parse_rational)]
    a: Option<Rational>,
    /// Keep coefficients as rational functions of a.
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    order: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct EnergyArgs {
    #[arg(long, value_parser = parse_rational)]
    mu: Rational,
    #[arg(long, value_parser = parse_rational)]
    lambda: Rational,
    #[arg(long, default_value_t = 5)]
    order: usize,
    /// Compare with the shooting oracle.
    #[arg(long)]
    oracle: bool,
    /// Use the extended-precision oracle.
    #[arg(long, requires = "oracle")]
    precise: bool,
    /// Fail with exit code 3 when |E_series - E_oracle| exceeds this.
    #[arg(long, requires = "oracle")]
    tolerance: Option<f64>,
    #[command(flatten)]
    shooting: ShootingArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct WaveArgs {
    #[arg(long, value_parser = parse_rational)]
    mu: Rational,
    #[arg(long, value_parser = parse_rational)]
    lambda: Rational,
    #[arg(long, default_value_t = 5)]
    order: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// Number of series terms (defaults to n_max + 1).
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Add oracle samples, normalized to the series at x = 1.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    shooting: ShootingArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct UnperturbedArgs {
    #[arg(long, value_parser = parse_rational)]
    mu: Rational,
    #[arg(long, default_value_t = 0)]
    level: u32,
    #[arg(long, default_value_t = 0)]
    parity: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_rational, default_value = "2")]
    mu: Rational,
    #[arg(long, default_value_t = 5)]
    order: usize,
    #[arg(long, value_parser = parse_rational, value_delimiter = ',', default_value = "0.02,0.01,0.005,0.0025")]
    lambdas: Vec<Rational>,
    /// Use the extended-precision oracle.
    #[arg(long)]
    precise: bool,
    /// Exit with code 3 unless the fitted slope lies in [K + 0.5, K + 1.5].
    #[arg(long)]
    check: bool,
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(subcommand)]
    kind: AnalyzeKind,
}

#[derive(Debug, Subcommand)]
enum AnalyzeKind {
    /// Power-law exponent of the large-n coefficients.
    Tail {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1000)]
        n_lo: u64,
        #[arg(long, default_value_t = 10_000)]
        n_hi: u64,
        /// Keep the lambda coupling in the recurrence.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Exit with code 3 unless the exponent lies in [-1.6, -1.4].
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ratio or root estimates of the convergence radius.
    Radius {
        #[arg(long, value_parser = parse_rational)]
        mu: Rational,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value = "ratio")]
        method: RadiusMethod,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Factorized form of the symbolic tau^(K).
    Structure {
        #[arg(long)]
        order: usize,
        /// Exit with code 3 unless every clause holds.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
