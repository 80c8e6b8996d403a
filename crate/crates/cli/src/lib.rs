//! Front end for the `latticecount` binary.

pub mod commands;
pub mod input;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::execute;

/// Environment variable overriding the brute-force cell budget.
pub const CELL_BUDGET_VAR: &str = "LATTICECOUNT_CELL_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "latticecount", version, about = "Exact lattice-point counts of rational simplices and polygons")]
pub struct Cli {
    /// Print a `key=value` report instead of plain output.
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Interior,
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Recursion,
    Oracle,
    /// Recursion, cross-checked by brute force on small instances.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `s -> count(s·b)` for integer `s`.
    Ray,
    /// `t -> count(t)` over all of `Z^(n+1)`.
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count lattice points of `{x : A x <= t}`.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Closure)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// Check `L°(-t) = (-1)^n L(t)` for the file's system and dilation.
    Reciprocity { file: PathBuf },
    /// Closed-form count of `{a1 x >= t1, a2 y >= t2, c1 x + c2 y <= t3}`.
    #[command(allow_negative_numbers = true)]
    Triangle {
        a1: i64,
        a2: i64,
        c1: i64,
        c2: i64,
        t1: i64,
        t2: i64,
        t3: i64,
        #[arg(long, value_enum, default_value_t = ModeArg::Closure)]
        mode: ModeArg,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Count lattice points of a rational polygon.
    Polygon {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Closure)]
        mode: ModeArg,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Fit the counting quasipolynomial and verify it on holdout points.
    Interpolate {
        file: PathBuf,
        /// Period per variable (comma separated); a single value is repeated.
        #[arg(long, value_delimiter = ',', required = true)]
        period: Vec<u64>,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Family::Ray)]
        family: Family,
        #[arg(long, value_enum, default_value_t = ModeArg::Closure)]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    InvalidDilation(String),
    Mismatch(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidDilation(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::InvalidDilation(m) => write!(f, "invalid dilation: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<input::ParseError> for CliError {
    fn from(e: input::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<latticecount::Error> for CliError {
    fn from(e: latticecount::Error) -> Self {
        use latticecount::Error as E;
        let message = e.to_string();
        match e {
            E::InvalidDilation(detail) => CliError::InvalidDilation(detail),
            E::MalformedSystem(_)
            | E::DilationLength { .. }
            | E::Arity { .. }
            | E::InvalidTriangle(_)
            | E::InvalidPolygon(_) => CliError::Parse(message),
            E::NotQuasipolynomial { .. } => CliError::Mismatch(message),
            _ => CliError::Failure(message),
        }
    }
}

/// Reads the cell budget override, if set.
pub fn cell_budget_from_env(value: Option<&str>) -> Result<u128, CliError> {
    match value {
        None => Ok(latticecount::oracle::DEFAULT_CELL_BUDGET),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{CELL_BUDGET_VAR} must be a nonnegative integer, got `{v}`"))),
    }
}
