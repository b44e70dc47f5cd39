//! `realiz`: decide truncated realizability problems from JSON files.
//!
//! Exit codes: 0 realizable or verified, 1 certificate produced, 2 usage or
//! format error, 3 resource cap exceeded, 4 verification failure.

mod commands;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use realiz_core::rational::{self, Rational};

#[derive(Parser, Debug)]
#[command(name = "realiz", version, about = "Exact truncated K-moment solver on finite configuration spaces")]
pub struct Cli {
    /// Output style for summaries.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Upper bound on the number of enumerated configurations.
    #[arg(long, global = true, env = "REALIZ_ENUM_CAP")]
    pub enum_cap: Option<u128>,

    /// Log every simplex tableau at debug level.
    #[arg(long, global = true)]
    pub debug_lp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    #[value(name = "at-most-q", alias = "AtMostQ")]
    AtMostQ,
    #[value(name = "exactly-q", alias = "ExactlyQ")]
    ExactlyQ,
    #[value(name = "simple", alias = "Simple")]
    Simple,
    #[value(name = "hard-core", alias = "HardCore")]
    HardCore,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Factorial,
    Power,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or count the configurations of a configuration set.
    Enumerate(EnumerateArgs),
    /// Power moments and correlation functions of a measure file.
    Moments(MomentsArgs),
    /// Convert a tensor ladder between power and factorial form.
    Convert(ConvertArgs),
    /// Find a representing measure or a certificate.
    Realize(RealizeArgs),
    /// Moment problem with a bound on the third moment.
    ExtendCubic(ExtendCubicArgs),
    /// Re-verify a stored result against its instance.
    CertifyCheck(CertifyCheckArgs),
    /// Emit an instance built from a known measure.
    Generate(GenerateArgs),
    /// Ratio bound of a quadratic against 1 + (Γ·k)³.
    RatioBound(RatioBoundArgs),
}

/// Space and configuration set given on the command line or read from a
/// file with `sites`, `distances` and `kspec`.
#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Instance file supplying sites, distances and kspec.
    pub input: Option<PathBuf>,
    /// Number of sites when no file is given (placed on a line, unit spacing).
    #[arg(long, conflicts_with = "input")]
    pub sites: Option<usize>,
    #[arg(long, value_enum, default_value_t = Variant::AtMostQ)]
    pub variant: Variant,
    #[arg(long, short = 'q')]
    pub q: Option<u32>,
    /// Exclusion distance for hard-core sets.
    #[arg(long, short = 'd', value_parser = parse_rational)]
    pub d: Option<Rational>,
    /// Print only the number of configurations.
    #[arg(long)]
    pub count: bool,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    /// Measure file `{sites?, support: [{counts, weight}]}`.
    pub input: PathBuf,
    /// Highest moment order (at most 3).
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// A JSON array of tensors of orders 0, 1, …, or the output of `moments`.
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct IngestArgs {
    /// The `L` block holds correlation functions instead of power moments.
    #[arg(long)]
    pub factorial: bool,
    /// Replace the total mass `ell0`.
    #[arg(long, value_parser = parse_rational)]
    pub ell0: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// One or more instance files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub ingest: IngestArgs,
    /// Re-check every verdict independently before reporting it.
    #[arg(long)]
    pub verify: bool,
    /// Result file (single input only).
    #[arg(long, short = 'o', conflicts_with = "out_dir")]
    pub output: Option<PathBuf>,
    /// Directory receiving `<stem>.result.json` for each input.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for batches of instances.
    #[arg(long, short = 'j', default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct ExtendCubicArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub ingest: IngestArgs,
    /// Third-moment cap, overriding the file's `r_max`.
    #[arg(long, value_parser = parse_rational)]
    pub r_max: Option<Rational>,
    /// Site weights, overriding the file's `gamma`.
    #[arg(long, value_parser = parse_rational, value_delimiter = ',')]
    pub gamma: Option<Vec<Rational>>,
    /// Report the smallest achievable third moment instead of testing a cap.
    #[arg(long)]
    pub minimize: bool,
    #[arg(long)]
    pub verify: bool,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyCheckArgs {
    pub instance: PathBuf,
    pub result: PathBuf,
    #[command(flatten)]
    pub ingest: IngestArgs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Number of sites, placed on a line with unit spacing.
    #[arg(long, global = true)]
    pub sites: Option<usize>,
    /// File with `sites` and optional `distances` (an instance file works).
    #[arg(long, global = true, conflicts_with = "sites")]
    pub space: Option<PathBuf>,
    /// Site weights recorded in the instance.
    #[arg(long, global = true, value_parser = parse_rational, value_delimiter = ',')]
    pub gamma: Option<Vec<Rational>>,
    /// Third-moment cap recorded in the instance.
    #[arg(long, global = true, value_parser = parse_rational)]
    pub r_max: Option<Rational>,
    /// Also write the generating measure to this file.
    #[arg(long, global = true)]
    pub measure_out: Option<PathBuf>,
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Independent occupation with the given probabilities.
    Bernoulli {
        #[arg(long, required = true, value_parser = parse_rational, value_delimiter = ',')]
        probs: Vec<Rational>,
    },
    /// Product of Poisson laws truncated at `cap` particles per site.
    Poisson {
        #[arg(long, required = true, value_parser = parse_rational, value_delimiter = ',')]
        intensities: Vec<Rational>,
        #[arg(long)]
        cap: u32,
    },
    /// Weights proportional to `z^mass` on a hard-core set.
    GibbsHardcore {
        #[arg(long, value_parser = parse_rational)]
        activity: Rational,
        #[arg(long, short = 'd', value_parser = parse_rational)]
        d: Rational,
        #[arg(long, short = 'q')]
        q: u32,
    },
    /// Seeded random weights on a random subset of a configuration set.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Variant::AtMostQ)]
        variant: Variant,
        #[arg(long, short = 'q')]
        q: u32,
        #[arg(long, short = 'd', value_parser = parse_rational)]
        d: Option<Rational>,
    },
}

#[derive(Args, Debug)]
pub struct RatioBoundArgs {
    /// File `{f0, f1, f2, gamma?}`.
    pub input: PathBuf,
    /// Largest total mass in the empirical scan.
    #[arg(long, default_value_t = 6)]
    pub scan_q: u32,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    rational::parse(text).map_err(|e| e.to_string())
}

fn init_logging(debug_lp: bool) {
    let mut builder = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"));
    if debug_lp {
        builder.filter_module("realiz_core::lp", log::LevelFilter::Debug);
    }
    let _ = builder.format_timestamp(None).try_init();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.debug_lp);
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
