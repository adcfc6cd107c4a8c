//! Command-line surface. Every option is optional so that a TOML config can
//! supply it; handlers fill in defaults and the filled-in values are echoed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homlab::reducts::ReductKind;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "homlab", version, about = "Experiments on homogeneous structures, Fraisse classes and sum-free sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// TOML file with option values; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// `json`, `csv` or `g6` for standard output, or a path whose extension picks the format.
    #[arg(long, global = true)]
    pub emit: Option<String>,

    /// Worker threads; 1 runs every kernel sequentially.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Run the experiment described entirely by `--config`.
    Run,
    #[command(flatten)]
    Experiment(Command),
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Homogeneity and t-homogeneity of a graph, or an exhaustive regularity sweep.
    Homog(HomogArgs),
    /// Place a graph among the finite homogeneous families.
    Gardiner(GardinerArgs),
    /// Induced-subgraph and orbit analysis of the Schlafli graph.
    Schlafli(SchlafliArgs),
    /// Tuple regularity across cospectral groups of small graphs.
    Spectrum(SpectrumArgs),
    /// Hereditary, joint-embedding and amalgamation checks, and limit approximations.
    Fraisse(FraisseArgs),
    /// Extension property and back-and-forth on computable random-graph oracles.
    Rado(RadoArgs),
    /// Sum-free set census, random sets and difference graphs.
    Sumfree(SumfreeArgs),
    /// Automorphism groups of the reducts of a finite linear order.
    Reducts(ReductsArgs),
    /// Switch a graph with respect to a vertex set, or search for a switching set.
    Switch(SwitchArgs),
    /// Tournaments, C-relations, their superpositions and the Ramsey-failure colouring.
    Rigid(RigidArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Homog(_) => "homog",
            Command::Gardiner(_) => "gardiner",
            Command::Schlafli(_) => "schlafli",
            Command::Spectrum(_) => "spectrum",
            Command::Fraisse(_) => "fraisse",
            Command::Rado(_) => "rado",
            Command::Sumfree(_) => "sumfree",
            Command::Reducts(_) => "reducts",
            Command::Switch(_) => "switch",
            Command::Rigid(_) => "rigid",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogArgs {
    /// Graph file (graph6, edge list or structure JSON).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Test t-homogeneity and t-tuple regularity at this level.
    #[arg(long)]
    pub t: Option<usize>,
    /// Compare 5-tuple regularity with homogeneity on all graphs up to this order.
    #[arg(long)]
    pub sweep: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GardinerArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchlafliArgs {
    /// Use the 16-regular complement instead of the 10-regular graph.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub complement: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Comma-separated regularity levels, e.g. `1,2` or `3`.
    #[arg(long)]
    pub levels: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FraisseCheck {
    Hereditary,
    Jep,
    Ap,
    Limit,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FraisseArgs {
    /// Class keyword: graphs, k3free, k4free, tournaments, bipartite, matchings,
    /// orders, 2-orders, c-relations, even-edges, or `A+B` for a superposition.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, value_enum)]
    pub check: Option<FraisseCheck>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Require strong amalgamation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub strong: Option<bool>,
    #[arg(long)]
    pub stages: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadoCheck {
    Extension,
    CommonNeighbours,
    Reciprocity,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadoArgs {
    /// `bit`, `prime`, or a finite graph such as `c5`, `k5`, `p4`.
    #[arg(long)]
    pub oracle: Option<String>,
    #[arg(long, value_enum)]
    pub check: Option<RadoCheck>,
    /// Base size for the extension check: all 3^m splits of the first m vertices.
    #[arg(long)]
    pub max_uv: Option<usize>,
    /// Source and target oracles.
    #[arg(long, num_args = 2, value_names = ["SOURCE", "TARGET"])]
    pub back_and_forth: Option<Vec<String>>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Largest vertex searched for a witness.
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long)]
    pub sets_up_to: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    /// Prime bound for the reciprocity check.
    #[arg(long)]
    pub below: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumfreeAction {
    /// Exact count of sum-free subsets of {1..n}.
    Census,
    /// Census for every n in a range.
    Sweep,
    /// Density experiment over random sum-free sets.
    Random,
    /// Difference graph of a set on a window.
    Gamma,
    /// Window check of the triangle-free extension property.
    Henson,
    /// Greedy gap construction.
    Greedy,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumfreeArgs {
    #[arg(value_enum)]
    pub action: Option<SumfreeAction>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Truncation horizon.
    #[arg(long = "N", visible_alias = "horizon")]
    #[serde(rename = "N", alias = "horizon")]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub bin_width: Option<f64>,
    /// Comma-separated positive integers.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductsArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// order, betweenness, circular, separation or pure-set; all five when absent.
    #[arg(long)]
    pub kind: Option<ReductKind>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma-separated vertices to switch.
    #[arg(long)]
    pub set: Option<String>,
    /// Find a set switching the input into this graph.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Find a set switching the input into its relabelling by this permutation.
    #[arg(long)]
    pub perm: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RigidCheck {
    Rigid,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RigidArgs {
    /// Tournament file and tree file to superpose.
    #[arg(long, num_args = 2, value_names = ["TOURNAMENT", "TREE"])]
    pub superpose: Option<Vec<PathBuf>>,
    #[arg(long, value_enum)]
    pub check: Option<RigidCheck>,
    /// Structure JSON with a tournament relation `T`.
    #[arg(long)]
    pub ramsey_failure: Option<PathBuf>,
    /// Comma-separated total order, least element first.
    #[arg(long)]
    pub order: Option<String>,
    /// Isomorphism classes of tournaments on this many vertices.
    #[arg(long)]
    pub tournaments: Option<usize>,
    /// All binary trees with this many leaves.
    #[arg(long)]
    pub trees: Option<usize>,
    /// Number of random superpositions to test for rigidity.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long)]
    pub max_points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Colour every tournament on up to this many points.
    #[arg(long)]
    pub ramsey_sweep: Option<usize>,
    /// Permutation pattern, e.g. `1,3,2`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Permutation searched for the pattern.
    #[arg(long)]
    pub text: Option<String>,
}
