use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nilp2", version, about = "Exact checkers for class-2 nilpotent p-groups and alternating bilinear maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalOpts {
    /// Enumeration cap; the default depends on the command.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the file or report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Build a group and write it in the shared text format.
    Construct {
        kind: ConstructKind,
        /// extraspecial P K | heisenberg P N [M] | central-product FILE COPIES |
        /// direct-power FILE K | ut P DIM | from-bilinear FILE
        params: Vec<String>,
    },
    /// Run one checker and emit a JSON report.
    Check(CheckArgs),
    /// Run a bundled set of criteria.
    Suite { name: SuiteName },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Extraspecial,
    Heisenberg,
    CentralProduct,
    DirectPower,
    Ut,
    FromBilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Quick,
    Acceptance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Psi,
    Sigma,
    Rho,
    LemmaBil,
    CountingBound,
    Density,
    Series,
    HallWitt,
    Laurent,
    Chains,
    Maximality,
    Star,
    Height,
    Purity,
    CommutatorIdentities,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    pub name: CheckName,
    /// Structure or group file.
    pub input: Option<PathBuf>,
    /// Tuple length or power.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Cyclic factor exponents of an abelian p-group, e.g. `2,1`.
    #[arg(long = "type", value_delimiter = ',')]
    pub abelian_type: Vec<u32>,
    /// Element coordinates, one per cyclic factor.
    #[arg(long, value_delimiter = ',')]
    pub element: Vec<usize>,
    /// Subgroup generator coordinates; repeatable.
    #[arg(long = "gen")]
    pub generators: Vec<String>,
    /// Exponents for the power identity.
    #[arg(long, value_delimiter = ',')]
    pub powers: Vec<u64>,
    /// Instance file for `star`; without it every instance up to `--max-rank` is scanned.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// Force sampling with this many cases.
    #[arg(long)]
    pub samples: Option<u64>,
}
