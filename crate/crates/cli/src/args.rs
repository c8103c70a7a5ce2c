use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hornlab::horn::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Classic,
    Tilde,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Classic => Variant::Classic,
            VariantArg::Tilde => Variant::Tilde,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hornlab", version, about = "Horn triples, LR coefficients, reductions and flag witnesses")]
pub struct Cli {
    /// Output format; defaults to `table`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for cached triple sets (overrides HORNLAB_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the on-disk cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// `key = value` file with default samples, seed, tol, trace_tol, eps,
    /// cache_dir and format.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Horn set for `(n, r)`.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "tilde")]
        variant: VariantArg,
    },
    /// LR-minimal irreducible tilde triples for each n in a range, one
    /// orbit representative each.
    Table {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        r: usize,
    },
    /// LR coefficient of a tilde triple.
    Lr(TripleArgs),
    /// Reduction chain of a tilde triple down to an irreducible one.
    Reduce(TripleArgs),
    /// Check every Horn inequality on sampled Hermitian pairs.
    VerifyHorn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Slack tolerance relative to 1 + |A| + |B|.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        trace_tol: Option<f64>,
        #[arg(long, value_enum, default_value = "classic")]
        variant: VariantArg,
        /// Print every triple's minimum slack, not only the summary.
        #[arg(long)]
        per_triple: bool,
    },
    /// Build and check a flag witness for a tilde triple on random flags.
    FlagWitness {
        #[command(flatten)]
        triple: TripleArgs,
        /// Ambient dimension; defaults to the smallest supported one.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Slack allowed in the trace bound, as a fraction such as `1/12`.
        #[arg(long)]
        eps: Option<String>,
        /// Write the JSON witness dump to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Run the wheel construction on random general-position projections.
    Wheel {
        /// Ambient dimension, a multiple of 6.
        #[arg(long, default_value_t = 12)]
        dim: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Defaults to `1/dim`.
        #[arg(long)]
        eps: Option<String>,
        /// Number of configurations to try.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TripleArgs {
    #[arg(long)]
    pub n: usize,
    /// Elements of I, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub i: Vec<usize>,
    /// Elements of J; defaults to I.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub j: Option<Vec<usize>>,
    /// Elements of K; defaults to I.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub k: Option<Vec<usize>>,
}
