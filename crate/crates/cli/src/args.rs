use clap::{Args, Parser, Subcommand, ValueEnum};

use lienil::groupalgebra::DEFAULT_SAMPLES;
use lienil::pcgroup::DEFAULT_ORDER_CAP;

#[derive(Debug, Parser)]
#[command(name = "lienil", version, about = "Lie nilpotency indices of modular group algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper Lie nilpotency indices of one group algebra.
    Indices(IndicesArgs),
    /// Lower central series, Lie dimension subgroups and rank profile.
    Series(GroupArgs),
    /// Containment checks and bounds for one group algebra.
    Lemmas(LemmasArgs),
    /// Index table and equality verdicts across the builtin catalog.
    Scan(ScanArgs),
}

#[derive(Clone, Debug, Args)]
pub struct GroupArgs {
    /// Catalog name or path to a presentation or Cayley-table file.
    #[arg(long)]
    pub group: String,

    /// Characteristic; required for Cayley tables, checked against everything else.
    #[arg(long)]
    pub p: Option<u32>,

    /// Refuse groups larger than this.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
}

#[derive(Clone, Debug, Args)]
pub struct IndicesArgs {
    #[command(flatten)]
    pub group: GroupArgs,

    /// Skip the brute-force chains and report only closed forms.
    #[arg(long)]
    pub formula_only: bool,
}

#[derive(Clone, Debug, Args)]
pub struct LemmasArgs {
    #[command(flatten)]
    pub group: GroupArgs,

    /// Random units per sampled check.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, Args)]
pub struct ScanArgs {
    /// Restrict to one characteristic; defaults to 2, 3 and 5 in turn.
    #[arg(long)]
    pub p: Option<u32>,

    /// Skip catalog entries larger than this.
    #[arg(long)]
    pub max_order: Option<usize>,

    /// Skip the brute-force chains; index verdicts become "not_checked".
    #[arg(long)]
    pub formula_only: bool,

    /// Recorded in the report; the scan is fully deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
