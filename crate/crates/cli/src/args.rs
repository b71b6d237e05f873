use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ffcube",
    version,
    about = "Additive decompositions of the cube set in prime fields: searches, exact identity checks and range scans"
)]
pub struct Cli {
    /// Worker threads; falls back to $FFCUBE_THREADS, then available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Report format; csv is only available for `scan`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generator, cube set and Jacobi sums of F_p.
    Field {
        #[arg(long)]
        p: u64,
    },
    /// Exhaustive search for one decomposition type at a single prime.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Run an exact identity or inequality suite.
    Verify(VerifyArgs),
    /// Run one task on every prime p ≡ 1 (mod 3) in a range.
    Scan(ScanArgs),
    /// Re-validate the records of a saved JSON report ("-" reads stdin).
    Bounds { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SearchKind {
    /// A + B = C_p with |B| = k.
    Pair {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// A + A = C_p.
    Selfsum {
        #[arg(long)]
        p: u64,
    },
    /// A - A = C_p ∪ {0}.
    Diffcover {
        #[arg(long)]
        p: u64,
    },
    /// A + B + C = C_p with every part of size at most --max-part.
    Triple {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        max_part: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Suite name, one of its aliases, or "all".
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub pmin: u32,
    #[arg(long, default_value_t = 200)]
    pub pmax: u32,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use Eisenstein-valued test functions where a suite supports them.
    #[arg(long)]
    pub complex: bool,
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    /// pair2, pair3, diffcover, selfsum, triple, identities or weil.
    #[arg(long)]
    pub task: String,
    #[arg(long, default_value_t = 2)]
    pub pmin: u32,
    #[arg(long)]
    pub pmax: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random trials per prime for the weil task.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Part-size cap for the triple task.
    #[arg(long, default_value_t = 2)]
    pub max_part: usize,
}
