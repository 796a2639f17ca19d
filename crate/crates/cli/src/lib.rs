//! The `elsvlab` command line: Hurwitz numbers, ELSV verification sweeps,
//! branch polynomials and formal-diffeomorphism arithmetic.

pub mod cache;
mod commands;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ELSVLAB_CACHE";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    BadData(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::BadData(_) => EXIT_DATA,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "elsvlab", version, about = "Exact Hurwitz numbers, ELSV checks and branch polynomials")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Cache directory for psi and Hodge tables (overrides ELSVLAB_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one Hurwitz number.
    Hurwitz(HurwitzArgs),
    /// Compare brute force, characters and ELSV over a sweep of profiles.
    Verify(VerifyArgs),
    /// Branch polynomial and normalized lift of a polar datum.
    Branch(BranchArgs),
    /// Arithmetic in the group of truncated formal diffeomorphisms.
    Series(SeriesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Character,
    Elsv,
    All,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Character => "character",
            Method::Elsv => "elsv",
            Method::All => "all",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Budgets {
    /// Largest degree the brute-force search accepts.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_d: u32,
    /// Largest number of simple branch points the brute-force search accepts.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_r: u32,
    /// Largest degree for the character method and for calibration sets.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_d_character: u32,
    /// Wall-clock limit for the brute-force search, in seconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub time_limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct HurwitzArgs {
    #[arg(long)]
    pub genus: u32,
    /// Ramification orders over infinity, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub profile: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    #[command(flatten)]
    pub budgets: Budgets,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Sweep every stable profile of degree at most this.
    #[arg(long, default_value_t = 4)]
    pub max_deg: u32,
    /// Sweep genera up to this.
    #[arg(long, default_value_t = 1)]
    pub max_genus: u32,
    /// Additional profile `g;k1,k2,...`; may be repeated.
    #[arg(long = "also")]
    pub also: Vec<String>,
    #[command(flatten)]
    pub budgets: Budgets,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BranchInput {
    /// JSON polar datum file, or `-` for standard input.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// A polynomial map in `z`, e.g. `z^3 - 3*z`.
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Args, Debug)]
pub struct BranchArgs {
    #[command(flatten)]
    pub input: BranchInput,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(subcommand)]
    pub op: SeriesOp,
}

#[derive(Args, Debug, Clone)]
pub struct Order {
    /// Truncation order of the group.
    #[arg(long = "k", value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Named rational parameter usable in expressions, `name=value`; may be repeated.
    #[arg(long = "param")]
    pub params: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum SeriesOp {
    /// The product `f.g = g(f(t))`.
    Compose {
        #[command(flatten)]
        order: Order,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The polar part of `rho(f(t))`.
    Act {
        #[command(flatten)]
        order: Order,
        #[arg(long)]
        f: String,
        /// `a_1,...,a_k`.
        #[arg(long, allow_hyphen_values = true)]
        tail: String,
    },
    /// Cone coordinates of `(x, lambda, u)`, or the inverse with `--inverse`.
    Sigma {
        #[command(flatten)]
        order: Order,
        #[arg(long)]
        inverse: bool,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        /// Unipotent part `t + ...`.
        #[arg(long)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// `1,a_{k-1},...,a_1`.
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
    },
    /// The power map on cone coordinates `a_k,...,a_1`.
    Nu {
        #[command(flatten)]
        order: Order,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
    },
    /// Inverse of the power map for a chosen `k`-th root of `b_k`.
    Nuinv {
        #[command(flatten)]
        order: Order,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
}

/// What a command produced: text for standard output and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parses `args` and runs the command; errors and usage go to `stderr`.
pub fn run<I, T>(args: I, env_cache: Option<PathBuf>) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut text = e.render().to_string();
            if code == EXIT_USAGE && !text.contains("Usage:") {
                let _ = write!(text, "\n{}\n", RunConfig::command().render_usage());
            }
            return if code == EXIT_OK {
                (Outcome { stdout: text, code }, String::new())
            } else {
                (Outcome { stdout: String::new(), code }, text)
            };
        }
    };
    let cache_dir = if cfg.no_cache { None } else { cfg.cache_dir.clone().or(env_cache) };
    match commands::dispatch(&cfg, cache_dir.as_deref()) {
        Ok(out) => (out, String::new()),
        Err(e) => (Outcome { stdout: String::new(), code: e.exit_code() }, format!("elsvlab: {e}\n")),
    }
}
