//! `odt`: validate quivers, enumerate HN strata, and compute ordinary and
//! orientifold DT invariants.

mod commands;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status 1 for failed checks, 2 for bad invocations.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    /// A full report whose checks did not all pass.
    Report(String),
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Bc,
    Variants,
}

#[derive(Parser)]
#[command(name = "odt", version, about = "Exact DT and orientifold DT invariants of quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct QuiverArgs {
    /// `loop:m`, `a2`, `a3`, or a quiver JSON file.
    #[arg(long)]
    pub quiver: String,
    /// Duality `s,tau+,tau-` for `loop:m` (default `1,0,m`).
    #[arg(long, allow_hyphen_values = true)]
    pub duality: Option<String>,
    /// Stability, e.g. `1,0,-1`; overrides the file or builtin value.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
}

#[derive(Args, Clone)]
pub struct DtOrdinaryArgs {
    #[arg(long, conflicts_with = "m")]
    pub quiver: Option<String>,
    /// Shorthand for `--quiver loop:M`.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub tmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Clone)]
pub struct DtOrientifoldArgs {
    /// `loop:m`.
    #[arg(long, conflicts_with = "m")]
    pub quiver: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// `s,tau+,tau-`, default `1,0,m`.
    #[arg(long, allow_hyphen_values = true)]
    pub duality: Option<String>,
    /// Lie type B, C or D; C is implied by `s = -1`, B is the default for `s = 1`.
    #[arg(long = "type")]
    pub type_tag: Option<String>,
    #[arg(long, default_value_t = 9)]
    pub ximax: u32,
    /// Add Chow Betti numbers.
    #[arg(long)]
    pub betti: bool,
    /// Compare against the dual family instead of printing invariants.
    #[arg(long, value_enum)]
    pub check: Option<CheckKind>,
    /// Split point for `--check variants`.
    #[arg(long, default_value_t = 1)]
    pub m0: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand)]
enum DtKind {
    Ordinary(DtOrdinaryArgs),
    Orientifold(DtOrientifoldArgs),
}

#[derive(Subcommand)]
enum Command {
    /// Check the duality axioms and print the derived partitions.
    Validate {
        #[command(flatten)]
        src: QuiverArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List HN types of `--d` or sigma-HN types of `--e`.
    Enumerate {
        #[command(flatten)]
        src: QuiverArgs,
        #[arg(long, conflicts_with = "e", required_unless_present = "e")]
        d: Option<String>,
        #[arg(long)]
        e: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Stacky point-count series, optionally self-dual or semistable.
    Series {
        #[command(flatten)]
        src: QuiverArgs,
        #[arg(long, default_value_t = 3)]
        tmax: u32,
        #[arg(long)]
        sigma: bool,
        #[arg(long)]
        semistable: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// DT invariants of a symmetric quiver.
    DtOrdinary(DtOrdinaryArgs),
    /// Orientifold DT invariants of a loop quiver with duality.
    DtOrientifold(DtOrientifoldArgs),
    /// `dt ordinary` and `dt orientifold` spellings of the two commands above.
    Dt {
        #[command(subcommand)]
        kind: DtKind,
    },
    /// Compare the recursions with brute-force counts over F_p.
    Verify {
        #[command(flatten)]
        src: QuiverArgs,
        /// Odd primes, comma separated.
        #[arg(long, default_value = "3,5")]
        oracle: String,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
        #[arg(long, default_value_t = 3)]
        emax: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("ODT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("ODT_THREADS must be a positive integer (got {raw:?})")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Validate { src, format } => commands::validate(&src, format),
        Command::Enumerate { src, d, e, format } => commands::enumerate(&src, d.as_deref(), e.as_deref(), format),
        Command::Series {
            src,
            tmax,
            sigma,
            semistable,
            format,
        } => commands::series(&src, tmax as i64, sigma, semistable, format),
        Command::DtOrdinary(args) | Command::Dt { kind: DtKind::Ordinary(args) } => commands::dt_ordinary(&args),
        Command::DtOrientifold(args) | Command::Dt { kind: DtKind::Orientifold(args) } => {
            commands::dt_orientifold(&args)
        }
        Command::Verify {
            src,
            oracle,
            dmax,
            emax,
            format,
        } => commands::verify(&src, &oracle, dmax as i64, emax as i64, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Report(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
