use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use turan_core::IndependenceSequence;

use crate::cache::CACHE_ENV;
use crate::verify::SUITES;

#[derive(Debug, Parser)]
#[command(name = "turan", version, about = "Exact dual Turán numbers of uniform hypergraphs")]
pub struct Cli {
    /// Log more (-v info, -vv debug)
    #[arg(short, long, action = ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fewest edges of an r-graph under a covering or component constraint
    Solve(SolveArgs),
    /// Print a named hypergraph
    Construct(ConstructArgs),
    /// Exact rational enclosures of limiting co-densities
    Bounds(BoundsArgs),
    /// Independence number and components of a hypergraph file ("-" for stdin)
    Alpha {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// T(n, K_k^(r)): every k-set contains an edge
    T,
    /// T(n, K_k^(r); m): as `t` with exactly m components
    Tm,
    /// Ť(n, r; S): independence sequence exactly S
    Tilde,
    /// Connected with independence number at most s
    ConnAlpha,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of components (family tm)
    #[arg(long = "components", short = 'm')]
    pub components: Option<usize>,
    /// With tm: minimize over 1..=m components instead of exactly m
    #[arg(long)]
    pub at_most: bool,
    /// Independence sequence such as 2,2,3 (family tilde)
    #[arg(long, value_parser = parse_sequence)]
    pub sequence: Option<IndependenceSequence>,
    /// Independence bound (family conn-alpha)
    #[arg(long)]
    pub s: Option<usize>,
    /// Use the exhaustive oracle instead of the search
    #[arg(long)]
    pub naive: bool,
    /// Return every optimal witness
    #[arg(long)]
    pub enumerate_all: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Stop after this many search nodes (edge sets with --naive)
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Stop after this many seconds
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// JSON-lines certificate cache
    #[arg(long, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    /// Ignore cached certificates that are not proven optimal
    #[arg(long)]
    pub require_optimal: bool,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    pub output: Output,
}

fn parse_sequence(s: &str) -> Result<IndependenceSequence, String> {
    s.parse().map_err(|e: turan_core::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// Turán graph T_{n,k} (a 2-graph with k classes)
    Turan,
    /// Disjoint complete r-graphs with the given --sizes
    Union,
    /// m complete r-graphs of nearly equal size
    Balanced,
    /// Two complete 3-graphs on the halves of n vertices
    ThmMax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    #[arg(long = "components", short = 'm')]
    pub m: Option<usize>,
    /// Part sizes such as 4,4,3
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    pub format: GraphFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundsKind {
    /// t_{r,k}
    T,
    /// t_{r,k}(m), needs --components
    TComponents,
    /// The Turán density π = 1 - t, for t_{r,k} or t_{r,k}(m)
    Interval,
    /// Enclosure with its full derivation
    Report,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(value_enum)]
    pub kind: BoundsKind,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "components", short = 'm')]
    pub components: Option<usize>,
    /// Override the enclosure of ṫ_r(s), as s=lo:hi with rationals or
    /// decimals (repeatable)
    #[arg(long = "entry")]
    pub entries: Vec<String>,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: String,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub max_l: Option<usize>,
    #[arg(long)]
    pub max_m: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Include the larger instances
    #[arg(long)]
    pub extended: bool,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    pub output: Output,
}
