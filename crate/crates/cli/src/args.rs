use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};

use crate::config::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "skolem",
    version,
    about = "Experiments with the Universal Skolem Set"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON configuration file; flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Sieve primes up to this limit
    #[arg(long, global = true, value_name = "N")]
    pub sieve_limit: Option<u64>,
    /// Cache the sieve in this file
    #[arg(long, global = true, value_name = "FILE")]
    pub cache_path: Option<PathBuf>,
    /// Largest window 2^w scanned in full
    #[arg(long, global = true, value_name = "N")]
    pub scan_cap: Option<u64>,
    /// Largest index evaluated exactly
    #[arg(long, global = true, value_name = "N")]
    pub exact_cap: Option<u64>,
    /// Miller-Rabin rounds beyond 64 bits
    #[arg(long = "rounds", global = true, value_name = "N")]
    pub probable_prime_rounds: Option<u32>,
    /// Worker threads (0: one per core)
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Same as --format json
    #[arg(long, global = true, conflicts_with = "format")]
    pub json: bool,
    /// Seed for sampling and random moduli
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership and enumeration
    #[command(subcommand)]
    Skolem(SkolemCmd),
    /// Moment statistics
    #[command(subcommand)]
    Density(DensityCmd),
    /// Prime pairs of two linear forms
    #[command(subcommand)]
    Bh(BhCmd),
    /// Zeros and degeneracy of a recurrence
    #[command(subcommand)]
    Lrs(LrsCmd),
    /// Constant A and the tower bound on the zeros of a recurrence
    Bounds(LrsInput),
}

#[derive(Debug, Subcommand)]
pub enum SkolemCmd {
    /// Decide whether n lies in S
    Member {
        #[arg(value_parser = parse_biguint)]
        n: BigUint,
    },
    /// List S(2^w), optionally restricted to [from, to]
    Enum {
        w: u32,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DensityCmd {
    /// Moments of r(n) for each window w
    Scan {
        #[arg(required = true)]
        w: Vec<u32>,
        /// Sample this many n per window instead of scanning it
        #[arg(long, value_name = "COUNT")]
        sample: Option<u64>,
    },
    /// Mean of g over even m up to Y
    MeanG { y: u64 },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First form as a,b (a·x + b)
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true, value_name = "A,B")]
    pub f1: (i64, i64),
    /// Second form as a,b
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true, value_name = "A,B")]
    pub f2: (i64, i64),
}

#[derive(Debug, Subcommand)]
pub enum BhCmd {
    /// Count x ≤ X with both forms prime
    Count {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "X", visible_alias = "x", value_name = "N")]
        x: u64,
    },
    /// The Bateman–Horn constant C_f
    Constant {
        #[command(flatten)]
        pair: PairArgs,
        /// Truncate the Euler product here [default: min(10^6, sieve limit)]
        #[arg(long)]
        plimit: Option<u64>,
    },
    /// Count against prediction and sieve bounds at each X
    Report {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "X", visible_alias = "x", value_name = "N", required = true, num_args = 1..)]
        x: Vec<u64>,
        #[arg(long)]
        plimit: Option<u64>,
    },
}

#[derive(Debug, Clone)]
pub struct IntList(pub Vec<BigInt>);

#[derive(Debug, Args)]
pub struct LrsInput {
    /// Recurrence coefficients a0,...,a_{k-1}
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, requires = "inits")]
    pub coeffs: Option<IntList>,
    /// Initial terms u0,...,u_{k-1}
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, requires = "coeffs")]
    pub inits: Option<IntList>,
    /// Whole recurrence as "coeffs=...; inits=..."
    #[arg(long, conflicts_with_all = ["coeffs", "inits"], value_name = "TEXT")]
    pub lrs: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum LrsCmd {
    /// Zeros of the sequence at indices in S up to --max-n
    Zeros {
        #[command(flatten)]
        input: LrsInput,
        #[arg(long, value_name = "N")]
        max_n: u64,
        /// Never confirm zeros by exact evaluation
        #[arg(long)]
        probabilistic: bool,
    },
    /// Minimal recurrence, degeneracy and merge decomposition
    Degenerate {
        #[command(flatten)]
        input: LrsInput,
    },
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s.trim()).map_err(|_| format!("{s:?} is not a non-negative integer"))
}

fn parse_ints(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|t| BigInt::from_str(t.trim()).map_err(|_| format!("bad integer {t:?}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

fn parse_form(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected a,b, got {s:?}"))?;
    let int = |t: &str| i64::from_str(t.trim()).map_err(|_| format!("bad integer {t:?}"));
    Ok((int(a)?, int(b)?))
}
