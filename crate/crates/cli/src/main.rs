//! `latgen`: generator analysis of finite lattices, the countable
//! counterexample lattices, and a one-shot claim verification suite.
//!
//! Results go to stdout; diagnostics go to stderr only. Exit codes:
//! 0 ok, 1 claim failed, 2 parse error, 3 not a lattice, 4 bound exceeded.

mod commands;
mod dot;
mod suite;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latgen_core::symbolic::{DEFAULT_INSTANCE_BOUND, DEFAULT_MAX_ROUNDS, DEFAULT_SEED};
use latgen_core::{ClosureConfig, Completeness, Error, Family};

#[derive(Debug, Parser)]
#[command(name = "latgen", version, about = "Non-generators, Frattini intersections and generated substructures")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Conventions {
    /// Run under both conventions and report both.
    Both,
    /// Substructures contain the top (and the bottom, for lattices).
    Standard,
    /// The empty family generates the empty set.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompletenessArg {
    Finitary,
    Countable,
    JoinComplete,
}

impl From<CompletenessArg> for Completeness {
    fn from(c: CompletenessArg) -> Self {
        match c {
            CompletenessArg::Finitary => Completeness::Finitary,
            CompletenessArg::Countable => Completeness::CountablyComplete,
            CompletenessArg::JoinComplete => Completeness::JoinComplete,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Signature {
    Lattice,
    Semilattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Omega,
    #[value(alias = "omega_sq")]
    OmegaSq,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Omega => Family::Omega,
            FamilyArg::OmegaSq => Family::OmegaSq,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Highlight {
    Gamma,
    Phi,
    Maximal,
    None,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Empty-meet/empty-join convention.
    #[arg(long, global = true, value_enum, default_value = "standard")]
    pub conventions: Conventions,
    /// Which infinitary operations substructures must respect.
    #[arg(long, global = true, value_enum, default_value = "countable")]
    pub completeness: CompletenessArg,
    /// Instance bound for parametric claims.
    #[arg(long, global = true, default_value_t = DEFAULT_INSTANCE_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    /// Randomized trials per screened element.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "LATGEN_SEED", default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Round cap for symbolic fixpoints.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ROUNDS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub max_rounds: usize,
    /// Largest carrier analyzed exactly (at most 64; above 16 the closed-set
    /// enumeration is used).
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=64))]
    pub analysis_cap: usize,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

impl Options {
    /// The configurations selected by `--conventions`, labelled.
    pub fn configs(&self, signature: Signature) -> Vec<(&'static str, ClosureConfig)> {
        let base = match signature {
            Signature::Lattice => ClosureConfig::lattice(),
            Signature::Semilattice => ClosureConfig::semilattice(),
        }
        .with_completeness(self.completeness.into());
        match self.conventions {
            Conventions::Standard => vec![("standard", base)],
            Conventions::None => vec![("none", base.without_extremes())],
            Conventions::Both => vec![("standard", base), ("none", base.without_extremes())],
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Γ, Φ, indispensable elements and maximal substructures of a finite structure.
    Analyze {
        /// Cover-list JSON file, or `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value = "lattice")]
        signature: Signature,
    },
    /// Corpus statistics over every labeled structure of a given size.
    Enumerate {
        /// Carrier size (at most 6).
        n: usize,
        #[arg(long, value_enum, default_value = "lattice")]
        signature: Signature,
    },
    /// Runs the full claim suite and reports one record per claim.
    VerifyPaper {
        /// Report elapsed times as null, for byte-identical reruns.
        #[arg(long)]
        no_timing: bool,
    },
    /// Hasse diagram of a finite lattice in DOT.
    ExportDot {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "gamma")]
        highlight: Highlight,
    },
    /// Closure of a symbolic set description in ω + 1 or ω² + 1.
    Closure {
        /// Set-description JSON file, or `-` for stdin.
        input: PathBuf,
    },
    /// The finite truncation of ω + 1 or ω² + 1 as a cover list, DOT, or report.
    Truncate {
        #[arg(value_enum)]
        family: FamilyArg,
        k: usize,
        #[arg(long, value_enum, default_value = "gamma")]
        highlight: Highlight,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::IndexOutOfRange { .. }
            | Error::CyclicCovers
            | Error::DuplicateCover(..)
            | Error::FamilyMismatch(_)
            | Error::UnsupportedBlock(_) => 2,
            Error::NotALattice { .. } | Error::NotASemilattice(_) | Error::EmptyCarrier | Error::NotAChain => 3,
            Error::CapacityExceeded { .. } | Error::BoundExceeded { .. } | Error::NonTermination { .. } => 4,
            Error::CertificateInvalid(_) | Error::NotASublattice | Error::NotProper => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
    }
}

fn dispatch(cli: Cli) -> Result<(String, u8), Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Analyze { input, signature } => commands::analyze(o, &read_input(input)?, *signature).map(|s| (s, 0)),
        Command::Enumerate { n, signature } => commands::enumerate(o, *n, *signature),
        Command::VerifyPaper { no_timing } => suite::verify_paper(o, *no_timing),
        Command::ExportDot { input, highlight } => commands::export_dot(o, &read_input(input)?, *highlight).map(|s| (s, 0)),
        Command::Closure { input } => commands::closure(o, &read_input(input)?).map(|s| (s, 0)),
        Command::Truncate { family, k, highlight } => {
            commands::truncate(o, (*family).into(), *k, *highlight).map(|s| (s, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            // help and version requests go to stdout; usage errors to stderr
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok((out, code)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("latgen: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
