//! Command-line front end for `sqerr-core`: reproduction tables, simulation
//! of the one-query algorithm, certificate checks and lower-bound searches.
//!
//! [`run`] does all the work and returns rendered text plus an exit code, so
//! the binary is a thin wrapper and tests can drive commands in-process.

#![forbid(unsafe_code)]

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqerr_core::{Budget, Error as CoreError};

mod commands;
pub mod formats;
pub mod output;

pub use formats::FormatError;
pub use output::{Cell, Format, Output, Record};

#[derive(Debug, Parser)]
#[command(name = "sqerr", version, about = "Exact error of one-query algorithms for AND and EQUALITY")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Lift the size limits on exponential computations.
    #[arg(long, global = true)]
    pub unsafe_budget: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form error table for a range of n.
    Table {
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Run the one-query algorithm exactly on one input or all inputs.
    Simulate(SimulateArgs),
    /// Symmetric sum-of-squares certificates.
    #[command(subcommand)]
    Blekherman(BlekhermanCommand),
    /// Lower-bound witnesses and searches.
    #[command(subcommand)]
    Bound(BoundCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// `EQUALITY_{n+1}` on `n + 1` bits.
    Eq,
    /// `AND_n` on `n` bits.
    And,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long)]
    pub n: Option<usize>,
    /// Input bits, e.g. `0110`.
    #[arg(long, required_unless_present = "exhaustive", conflicts_with = "exhaustive")]
    pub input: Option<String>,
    #[arg(long, requires = "n")]
    pub exhaustive: bool,
    /// Draw this many seeded samples of the output bit.
    #[arg(long, conflicts_with = "exhaustive")]
    pub shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Target polynomial `q`: either the symmetrization of `p^2` for a
/// multilinear `p` read from a file, or explicit univariate coefficients.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TargetArgs {
    /// JSON polynomial file; the target is the symmetrization of its square.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    /// Ascending coefficients of `q(s)`, e.g. `1,-2,1` for `(s-1)^2`.
    #[arg(long, allow_hyphen_values = true)]
    pub univariate: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum BlekhermanCommand {
    /// Check a certificate file against a target polynomial.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Search for a degree-2 certificate.
    Find {
        #[command(flatten)]
        target: TargetArgs,
        /// Number of variables; required with --univariate.
        #[arg(long)]
        n: Option<usize>,
        /// Write the certificate here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed form against enumeration for the all-pairs-mixed probability.
    Probability {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        b: usize,
    },
    /// Test `rho^2 = c rho` for the orbit sum of a basis polynomial.
    Projector {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        /// Comma-separated coefficients, `n - 2b + 1` of them.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// Closed-form bounds for one n.
    Value {
        #[arg(long)]
        n: usize,
    },
    /// Optimal witness polynomial and its feasibility check.
    Witness {
        #[arg(long)]
        n: usize,
        /// Target error; defaults to the optimum.
        #[arg(long)]
        epsilon: Option<String>,
        /// Write the witness here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive grid search for a witness at a given error.
    Falsify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 200)]
        resolution: u32,
    },
    /// Numeric search over one-query algorithms.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = sqerr_core::lower_bound::MIN_SEARCH_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::BudgetExceeded { .. }) => 3,
            CliError::Core(CoreError::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

/// Rendered result of a command: text for stdout and whether every check
/// it performed passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = if cli.unsafe_budget {
        Budget::unlimited()
    } else {
        Budget::default()
    };
    match &cli.command {
        Command::Table { n_min, n_max } => commands::table(*n_min, *n_max),
        Command::Simulate(args) => commands::simulate(args, &budget),
        Command::Blekherman(cmd) => commands::blekherman(cmd, &budget),
        Command::Bound(cmd) => commands::bound(cmd, &budget),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// `(exit code, stdout, stderr)`.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => (outcome.exit_code(), outcome.output.render(cli.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
