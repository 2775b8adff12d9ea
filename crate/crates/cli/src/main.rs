//! `ro2alg`: dimension tables, bases, expansions and verification suites.

mod backends;
mod commands;
mod verify;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "ro2alg", version, about = "Computations with RO(C_2^n)-graded global algebras over F2")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Largest colimit stage tried when localizing.
    #[arg(long, global = true, default_value_t = ro2alg::localization::DEFAULT_MAX_STAGE)]
    max_stage: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// `bredon`, `borel`, `psi-universal`, `free-gt <file>` or `bordism-model`.
#[derive(Args, Debug, Clone)]
pub struct BackendArg {
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "FILE"])]
    backend: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Rank n of the group C^n.
    #[arg(long, default_value_t = 1)]
    group_rank: usize,

    /// Integer part range `a..b` (inclusive).
    #[arg(long, default_value = "-4..4", allow_hyphen_values = true, value_parser = parse_range)]
    k: RangeInclusive<i64>,

    /// Range of |V| as `a..b` (inclusive).
    #[arg(long, default_value = "0..4", value_parser = parse_size_range)]
    v_size: RangeInclusive<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension tables over a grading window.
    Dims {
        #[command(flatten)]
        backend: BackendArg,
        #[command(flatten)]
        window: WindowArgs,
        /// Truncation of the bordism model.
        #[arg(long, default_value_t = 8)]
        trunc: u32,
    },
    /// Labeled bases over a grading window.
    Basis {
        #[command(flatten)]
        backend: BackendArg,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 8)]
        trunc: u32,
    },
    /// Circuits of the characters of C^n and the Bredon relations r(T).
    Circuits {
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// The formal group law of a backend, or the universal 2-torsion law.
    Fgl {
        #[command(flatten)]
        backend: BackendArg,
        /// Build the universal 2-torsion law instead.
        #[arg(long)]
        universal: bool,
        #[arg(long, default_value_t = 6)]
        trunc: u32,
    },
    /// The classes β_n in Φ^C.
    Betas {
        #[command(flatten)]
        backend: BackendArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        trunc: u32,
    },
    /// N(C)_k inside Φ^C N by integrality, with the Alexander cross-check.
    ReconstructNc {
        #[arg(long)]
        max_degree: i64,
        /// Model truncation; at least max-degree + 2.
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// The predicted N_*-basis of N(C)_*.
    Alexander {
        #[arg(long)]
        max_degree: i64,
    },
    /// H^*(G_n; F2) by rewriting.
    GnCohomology {
        n: usize,
        /// Reduce a product of two monomials such as `p2^2` and `p1*p3`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        product: Option<Vec<String>>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        backend: BackendArg,
        /// Largest group rank.
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        /// Integer part range; each suite has its own default.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        k: Option<RangeInclusive<i64>>,
        #[arg(long, default_value = "0..4", value_parser = parse_size_range)]
        v_size: RangeInclusive<u32>,
        /// Series truncation; each suite has its own default.
        #[arg(long)]
        trunc: Option<i64>,
        /// Number of sampled classes.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a range a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_size_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let r = parse_range(s)?;
    let a = u32::try_from(*r.start()).map_err(|_| format!("negative size in {s:?}"))?;
    let b = u32::try_from(*r.end()).map_err(|_| format!("negative size in {s:?}"))?;
    Ok(a..=b)
}

/// Failure modes, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: exit 2.
    Usage(String),
    /// Engine error: exit 3 for window exhaustion, else 1.
    Engine(ro2alg::Error),
    Io(String),
}

impl From<ro2alg::Error> for CliError {
    fn from(e: ro2alg::Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A result with both renderings.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub passed: bool,
}

impl Report {
    pub fn new(json: Value, table: String) -> Self {
        Report { json, table, passed: true }
    }
}

fn run(cli: Cli) -> CliResult<Report> {
    let ctx = backends::Context { max_stage: cli.max_stage };
    match cli.command {
        Command::Dims { backend, window, trunc } => commands::dims(&ctx, &backend, &window, trunc),
        Command::Basis { backend, window, trunc } => commands::basis(&ctx, &backend, &window, trunc),
        Command::Circuits { rank } => commands::circuits(rank),
        Command::Fgl { backend, universal, trunc } => commands::fgl(&ctx, &backend, universal, trunc),
        Command::Betas { backend, max_n, trunc } => commands::betas(&ctx, &backend, max_n, trunc),
        Command::ReconstructNc { max_degree, trunc } => commands::reconstruct_nc(max_degree, trunc),
        Command::Alexander { max_degree } => commands::alexander(max_degree),
        Command::GnCohomology { n, product } => commands::gn_cohomology(n, product.as_deref()),
        Command::Verify { suite, backend, max_rank, k, v_size, trunc, samples, seed } => {
            let opts = verify::Options { max_rank, k, v_size, trunc, samples, seed };
            verify::run(&ctx, suite, &backend, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).unwrap_or_default()),
                Format::Table => print!("{}", report.table),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Engine(e)) if e.is_window_exhaustion() => {
            eprintln!("error: {e}");
            if matches!(e, ro2alg::Error::NotStable { .. }) {
                eprintln!("hint: raise --max-stage or narrow --k");
            }
            ExitCode::from(3)
        }
        Err(CliError::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
