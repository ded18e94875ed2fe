use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relaxgap_core::Rational;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "relaxgap", version, about = "Exact LP relaxation and integrality gap reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every sampled choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Drop one facet of the arc polytope and probe along its normal.
    HullAdversary(HullAdversaryArgs),
    /// Keep a budget of facets and probe every omitted one.
    HullScan(HullScanArgs),
    /// Relaxation value against the exact tour optimum.
    ValleyGap(ValleyGapArgs),
    /// Degree LP with separated subtour cuts, round by round.
    CuttingPlane(CuttingPlaneArgs),
    /// Answer "tour cost <= X" through a relaxation or exactly.
    Decide(DecideArgs),
    /// Audit a fractional flow against degree and cut constraints.
    CheckFlow(CheckFlowArgs),
    /// Bits needed to single out one object among many.
    SpaceBounds(SpaceBoundsArgs),
    /// Sample sin(2^x pi) + x on a grid and test monotonicity.
    ModelDemo(ModelDemoArgs),
    /// Solve a linear program read from a file.
    SolveLp(SolveLpArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct HullAdversaryArgs {
    #[arg(long)]
    pub vertices: usize,
    /// Facet to drop, counted from the left end of the arc.
    #[arg(long)]
    pub omit: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct HullScanArgs {
    #[arg(long)]
    pub vertices: usize,
    /// Facets kept in each truncated model.
    #[arg(long)]
    pub budget: usize,
    /// Subsets drawn when there are too many to enumerate.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

/// A generated valley instance, or one read from `--instance`.
#[derive(Debug, Args, Serialize)]
pub struct InstanceArgs {
    #[arg(long, conflicts_with_all = ["valleys", "cities_per_valley", "intra_cost", "crossing_cost"])]
    pub instance: Option<PathBuf>,
    #[arg(long, required_unless_present = "instance")]
    pub valleys: Option<usize>,
    #[arg(long, required_unless_present = "instance")]
    pub cities_per_valley: Option<usize>,
    #[arg(long)]
    pub intra_cost: Option<Rational>,
    #[arg(long)]
    pub crossing_cost: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelaxationKind {
    /// Degree equations only.
    Degree,
    /// Degree equations plus one cut per valley.
    ValleyCuts,
    /// Degree equations plus separated cuts.
    CuttingPlane,
}

#[derive(Debug, Args, Serialize)]
pub struct ValleyGapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = RelaxationKind::Degree)]
    pub relaxation: RelaxationKind,
    /// LP solves allowed to the cutting-plane relaxation.
    #[arg(long, default_value_t = 256)]
    pub rounds: usize,
    /// Decision thresholds; defaults to one below the tour optimum.
    #[arg(long = "x", value_delimiter = ',')]
    pub thresholds: Vec<Rational>,
}

#[derive(Debug, Args, Serialize)]
pub struct CuttingPlaneArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 256)]
    pub rounds: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViaKind {
    Lp,
    Ilp,
}

#[derive(Debug, Args, Serialize)]
pub struct DecideArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    #[arg(long = "x")]
    pub threshold: Rational,
    #[arg(long, value_enum, default_value_t = ViaKind::Lp)]
    pub via: ViaKind,
    /// Relaxation used when answering through the LP.
    #[arg(long, value_enum, default_value_t = RelaxationKind::Degree)]
    pub relaxation: RelaxationKind,
    #[arg(long, default_value_t = 256)]
    pub rounds: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckFlowArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub flow: PathBuf,
    /// Subset to test as a cut, e.g. `0,1`; repeatable.
    #[arg(long = "cut", value_parser = parse_subset)]
    pub cuts: Vec<Subset>,
    /// Also test every valley as a cut.
    #[arg(long)]
    pub valley_cuts: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct Subset(pub Vec<usize>);

fn parse_subset(s: &str) -> Result<Subset, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Subset)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceMode {
    /// One object among `--count`.
    Single,
    /// One `--subset`-element subset of `--universe`.
    Subset,
    /// Subsets of size 2^n / divisor for n over a range.
    Growth,
}

#[derive(Debug, Args, Serialize)]
pub struct SpaceBoundsArgs {
    #[arg(long, value_enum)]
    pub mode: SpaceMode,
    /// Object count: an integer, `a^b`, or `n!`.
    #[arg(long, required_if_eq("mode", "single"))]
    pub count: Option<String>,
    #[arg(long, required_if_eq("mode", "subset"))]
    pub universe: Option<u64>,
    #[arg(long, required_if_eq("mode", "subset"))]
    pub subset: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub from: u32,
    #[arg(long, default_value_t = 12)]
    pub to: u32,
    #[arg(long, default_value_t = 4)]
    pub divisor: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ModelDemoArgs {
    #[arg(long, default_value = "0")]
    pub start: Rational,
    #[arg(long, default_value = "8")]
    pub end: Rational,
    #[arg(long, default_value = "1")]
    pub step: Rational,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveLpArgs {
    #[arg(long)]
    pub program: PathBuf,
    /// Require the listed variables (or all, with `--integer-all`) to be integral.
    #[arg(long = "integer", value_delimiter = ',')]
    pub integer: Vec<usize>,
    #[arg(long, conflicts_with = "integer")]
    pub integer_all: bool,
    /// Branch-and-bound node limit.
    #[arg(long, default_value_t = 100_000)]
    pub max_nodes: usize,
}
