//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tree_asymptotics::Variety;

use crate::config::{resolve_cache_dir, OutputFormat, RunConfig, CACHE_DIR_ENV};

fn parse_variety(s: &str) -> Result<Variety, String> {
    s.parse::<Variety>().map_err(|e| e.to_string())
}

/// `all` or one variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyTarget(pub Option<Variety>);

fn parse_target(s: &str) -> Result<VerifyTarget, String> {
    match s {
        "all" => Ok(VerifyTarget(None)),
        other => parse_variety(other).map(|v| VerifyTarget(Some(v))),
    }
}

/// Exact counts, singularities and full asymptotic expansions for Pólya
/// trees, rooted identity trees and hierarchies.
///
/// Sizes count nodes for Pólya and identity trees, and leaves for
/// hierarchies; index n always means size n, starting from T_0 = 0.
#[derive(Parser, Debug)]
#[command(name = "tree-asymptotics", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Decimal digits D of the reported results (at least 30); 15 guard digits are added internally.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,
    /// Truncation order N of the zeta series (at least 50).
    #[arg(long, global = true, default_value_t = 200)]
    pub terms: usize,
    #[arg(long, global = true, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Cache for downloaded b-files.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Never touch the network, even with --fetch.
    #[arg(long, global = true)]
    pub offline: bool,
    /// Use the hierarchy sign convention that does not satisfy the equation (for comparison).
    #[arg(long, global = true, hide = true)]
    pub as_printed_hierarchy: bool,
}

impl GlobalArgs {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            digits: self.digits,
            terms: self.terms,
            format: self.format,
            cache_dir: resolve_cache_dir(self.cache_dir.clone(), None),
            offline: self.offline,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact counts T_0..T_n from the recurrences.
    Counts {
        #[arg(value_parser = parse_variety)]
        variety: Variety,
        #[arg(long, short = 'n')]
        n: usize,
    },
    /// Singularity rho, Puiseux coefficients t_0..t_K and tau_0..tau_K.
    Expand {
        #[arg(value_parser = parse_variety)]
        variety: Variety,
        /// Last index K reported for both t and tau.
        #[arg(long, default_value_t = 18)]
        order: usize,
        /// Report tau up to this index instead of K.
        #[arg(long)]
        tau_order: Option<usize>,
        /// Plain rows of t_n at 19 significant digits.
        #[arg(long)]
        table1: bool,
        /// Plain rows of tau_n at 19 significant digits.
        #[arg(long)]
        table2: bool,
    },
    /// Order-k estimate of T_n against the exact value.
    Estimate {
        #[arg(value_parser = parse_variety)]
        variety: Variety,
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Relative errors of order-k estimates over a grid of sizes, plus ratio.csv.
    ErrorTable {
        #[arg(value_parser = parse_variety, default_value = "hierarchy")]
        variety: Variety,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 50, 100, 200, 500])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 4, 8])]
        orders: Vec<usize>,
        /// Directory receiving ratio.csv (estimate / exact for every size up to the largest).
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Compare computed counts with OEIS b-files.
    VerifyOeis {
        /// A variety or `all`.
        #[arg(value_parser = parse_target, default_value = "all")]
        variety: VerifyTarget,
        /// Download b-files (cached) instead of using the bundled ones.
        #[arg(long)]
        fetch: bool,
        /// Largest index compared.
        #[arg(long, default_value_t = 500)]
        n_max: usize,
        /// Read this b-file instead (plain `n value` lines).
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}
