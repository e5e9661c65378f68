//! Command-line frontend for `vgit`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns the exit
//! code together with the text that belongs on stdout and stderr.

pub mod cache;
pub mod commands;
pub mod form;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;
use vgit::hyperbolic::HyperbolicError;
use vgit::lattice::LatticeError;
use vgit::moduli::ModuliError;
use vgit::monoform::{LineVar, MonoError};
use vgit::stability::StabilityError;

use crate::cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "vgit", version, about = "Exact GIT walls for curve and line pairs, and even lattice arithmetic")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Ignore the cache directory for this run.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Candidate and realized walls in degree D.
    Walls {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=7))]
        degree: u32,
    },
    /// Stability interval of a configuration or a pair.
    Interval(IntervalArgs),
    /// Stability threshold of a curve written in adapted coordinates.
    Threshold(ThresholdArgs),
    /// Log canonical threshold of a quasihomogeneous germ.
    Lct(LctArgs),
    /// Lattice invariants.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Vinberg's algorithm on a hyperbolic lattice.
    Vinberg(VinbergArgs),
    /// Cusps of T = N + U for a hyperbolic lattice N.
    Boundary(BoundaryArgs),
    /// Whether a configuration of simple singularities occurs.
    Occurs {
        /// Root configuration such as A12, 10A1 or E7+2A1+D4.
        #[arg(long)]
        roots: String,
        /// Include every candidate subgroup in the JSON output.
        #[arg(long)]
        trace: bool,
    },
    /// Run a bundle of built-in checks against their recorded values.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["config", "pair"])))]
pub struct IntervalArgs {
    /// Configuration JSON: {"d": 5, "curve": [[a,b,c], ...], "line": ["x0", ...]}.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Pair JSON: {"curve": [[a,b,c], ...] or "x0^2*x2^3 + ...", "line": "x1"}.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    /// Intersect over the six coordinate orderings.
    #[arg(long, requires = "pair", conflicts_with = "config")]
    pub diagonal: bool,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Homogeneous form in x0, x1, x2, or affine form in x, y with --affine.
    #[arg(long)]
    pub monomials: String,
    #[arg(long, requires = "degree")]
    pub affine: bool,
    /// Coordinate receiving x.
    #[arg(long, default_value = "x2")]
    pub x_to: LineVar,
    /// Coordinate receiving y.
    #[arg(long, default_value = "x1")]
    pub y_to: LineVar,
    /// Degree to homogenize to.
    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct LctArgs {
    /// Weights of x and y, as W1,W2.
    #[arg(long, value_parser = parse_weights)]
    pub weights: (u64, u64),
    /// Affine form in x, y.
    #[arg(long)]
    pub form: String,
    /// Also report 3/lct - d for this degree.
    #[arg(long)]
    pub degree: Option<i64>,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Lattice such as "E8+D4+U(2)", "T(2,3,8)", "M", "<-4>" or a JSON Gram matrix.
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, Subcommand)]
pub enum LatticeAction {
    /// Discriminant group and form.
    Disc(SpecArg),
    /// Roots of a negative definite lattice.
    Roots(SpecArg),
    /// Even overlattices up to the obvious symmetries.
    Overlattices(SpecArg),
    /// Whether two lattices share signature and discriminant form.
    Genus {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        other: String,
    },
    /// Primitive embedding into the K3 lattice.
    Embed(SpecArg),
}

#[derive(Debug, Args)]
pub struct VinbergArgs {
    #[arg(long)]
    pub spec: String,
    /// Largest number of simple roots.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    /// Largest |root . h| examined.
    #[arg(long, default_value_t = 64)]
    pub max_height: i64,
    /// Base vector, comma separated; defaults to the polarization when recognizable.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<i64>>,
    /// Accepted values of -root^2.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub norms: Vec<i64>,
    /// Print the diagram in DOT format instead of the summary; ignored with --json.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    /// The hyperbolic lattice N; cusps are computed for N + U.
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    #[arg(long, default_value_t = 64)]
    pub max_height: i64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub norms: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tables,
    Orbits,
    Strata,
    Lattice,
    Boundary,
    All,
}

fn parse_weights(text: &str) -> Result<(u64, u64), String> {
    let (a, b) = text.split_once(',').ok_or("expected W1,W2")?;
    let w = |s: &str| s.trim().parse::<u64>().map_err(|e| format!("`{s}`: {e}"));
    Ok((w(a)?, w(b)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Mono(#[from] MonoError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hyperbolic(HyperbolicError::Budget | HyperbolicError::Check(_)) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        }
    }
}

/// What a subcommand produced.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when a check failed or a predicate answered no.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs with the cache taken from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, |no_cache| if no_cache { Cache::disabled() } else { Cache::from_env() })
}

pub fn run_with<I, T>(args: I, cache: impl FnOnce(bool) -> Cache) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let cache = cache(cli.no_cache);
    match commands::dispatch(&cli.command, &cache) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome {
                code: if report.ok { EXIT_OK } else { EXIT_MISMATCH },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
