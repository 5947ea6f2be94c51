use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "saito",
    version,
    about = "Symmetry groups, equivariant zeta functions and Saito duality for invertible polynomials"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weights, atoms, symmetry groups and generators.
    Analyze(AnalyzeArgs),
    /// Equivariant, reduced and classical monodromy zeta functions.
    Zeta(InputArgs),
    /// Check the equivariant duality (and the root corollary when it applies).
    Dual(InputArgs),
    /// Monodromy element and its geometric roots.
    Roots(InputArgs),
    /// Verify the duality over a generated family of polynomials.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Polynomial such as "x^3*y + y^3", or a matrix literal {"E": [[3,1],[0,3]]}.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Also list every subgroup of G_f (bounded by SAITO_MAX_GROUP_ORDER).
    #[arg(long)]
    pub subgroups: bool,

    /// Largest group order for which subgroups are listed.
    #[arg(
        long,
        env = "SAITO_MAX_GROUP_ORDER",
        default_value_t = 10_000,
        hide_env_values = true
    )]
    pub max_group_order: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Most variables in a generated polynomial (1 to 8).
    #[arg(long, default_value_t = 4)]
    pub max_vars: usize,

    /// Largest exponent (2 to 9).
    #[arg(long, default_value_t = 5)]
    pub max_exp: u64,

    /// Include Thom–Sebastiani sums of atoms.
    #[arg(long)]
    pub sums: bool,

    /// Leave out loop-type atoms.
    #[arg(long)]
    pub no_loops: bool,

    /// Leave out chain-type atoms (Fermat monomials included).
    #[arg(long)]
    pub no_chains: bool,

    /// Draw this many random sums instead of listing all of them
    /// (implies --sums).
    #[arg(long, value_name = "N")]
    pub sample_sums: Option<usize>,

    /// Seed for --sample-sums.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Stop after this many polynomials and mark the report truncated.
    #[arg(long, value_name = "N", default_value_t = 100_000)]
    pub limit: usize,

    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
