use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use poolq_core::discretize::Alphabet;
use poolq_core::pipeline::{EmpiricalMode, FeatureSource};
use poolq_core::{Affinity, ClusterRule, Laplacian, NmiNorm, Rounds, TransferVariant};

#[derive(Debug, Parser)]
#[command(
    name = "poolq",
    version,
    about = "Feature quality diagnostics for graph pooling"
)]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score feature sources on a dataset and write JSON and CSV reports.
    Quality(QualityArgs),
    /// Random-colouring curves and threshold curves for positional encodings.
    Curves(CurvesArgs),
    /// Mean NMI between topology and feature clusterings.
    Nmi(NmiArgs),
    /// Colour refinement trajectories of every graph.
    RefineDump(RefineDumpArgs),
    /// Whether a select operator can reproduce a target grouping.
    Feasibility(FeasibilityArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DatasetArgs {
    /// Directory holding the dataset files, or its parent.
    #[arg(long, env = "POOLQ_DATA")]
    pub dataset: Option<PathBuf>,

    /// Dataset name, the file prefix in TUDataset layout.
    #[arg(long, default_value = "MUTAG")]
    pub name: String,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output path stem; `.json` and `.csv` are appended.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScoringArgs {
    /// Number of reference groups per graph: `auto` or a fixed count.
    #[arg(long, default_value = "auto", value_parser = parse_with::<ClusterRule>)]
    pub clusters: ClusterRule,

    /// Laplacian for spectral clustering: `sym` or `unnormalized`.
    #[arg(long, default_value = "sym", value_parser = parse_with::<Laplacian>)]
    pub laplacian: Laplacian,

    #[arg(long, default_value = "full", value_parser = parse_with::<TransferVariant>)]
    pub variant: TransferVariant,

    /// Fraction of graphs in the seen part of the split.
    #[arg(long, default_value_t = 0.8)]
    pub split: f64,
}

#[derive(Debug, Clone, Args)]
pub struct QualityArgs {
    #[command(flatten)]
    pub data: DatasetArgs,

    #[command(flatten)]
    pub scoring: ScoringArgs,

    /// Comma-separated feature sources, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_sources)]
    pub features: SourceList,

    /// Comma-separated refinement depths; `inf` iterates to stability.
    #[arg(long, default_value = "0,1,2,3,inf", value_parser = parse_rounds)]
    pub cr: RoundsList,

    /// Fixed threshold for continuous sources, instead of a sweep.
    #[arg(long, conflicts_with = "tau_grid")]
    pub tau: Option<f64>,

    /// Threshold grid `start:step:end`.
    #[arg(long, default_value = "0:0.01:1")]
    pub tau_grid: String,

    /// How colour classes of different graphs are identified.
    #[arg(long, default_value = "ordinal", value_parser = parse_with::<Alphabet>)]
    pub alphabet: Alphabet,

    /// Use node labels or node attributes as the empirical features.
    #[arg(long, default_value = "auto", value_parser = parse_with::<EmpiricalMode>)]
    pub empirical: EmpiricalMode,

    /// Recorded in the report; reference partitions cluster the adjacency.
    #[arg(long, default_value = "cosine", value_parser = parse_with::<Affinity>)]
    pub affinity: Affinity,

    /// Positional encoding dimension.
    #[arg(long, default_value_t = poolq_core::pipeline::DEFAULT_PE_DIM)]
    pub pe_dim: usize,

    /// Keep per-threshold curves of continuous sources in the JSON report.
    #[arg(long)]
    pub keep_curves: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub data: DatasetArgs,

    #[command(flatten)]
    pub scoring: ScoringArgs,

    /// Comma-separated colours-per-node fractions.
    #[arg(
        long,
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        value_delimiter = ','
    )]
    pub fractions: Vec<f64>,

    #[arg(long, default_value = "0,1,2,3,inf", value_parser = parse_rounds)]
    pub cr: RoundsList,

    /// Threshold grid `start:step:end` for the positional-encoding curves.
    #[arg(long, default_value = "0:0.01:1")]
    pub tau_grid: String,

    #[arg(long, default_value_t = poolq_core::pipeline::DEFAULT_PE_DIM)]
    pub pe_dim: usize,
}

#[derive(Debug, Clone, Args)]
pub struct NmiArgs {
    #[command(flatten)]
    pub data: DatasetArgs,

    #[arg(long, default_value = "auto", value_parser = parse_with::<ClusterRule>)]
    pub clusters: ClusterRule,

    /// Laplacian for spectral clustering: `sym` or `unnormalized`.
    #[arg(long, default_value = "sym", value_parser = parse_with::<Laplacian>)]
    pub laplacian: Laplacian,

    #[arg(long, default_value = "cosine", value_parser = parse_with::<Affinity>)]
    pub affinity: Affinity,

    #[arg(long, default_value = "sqrt", value_parser = parse_with::<NmiNorm>)]
    pub normalisation: NmiNorm,
}

#[derive(Debug, Clone, Args)]
pub struct RefineDumpArgs {
    #[command(flatten)]
    pub data: DatasetArgs,

    /// Rounds to record; `inf` records up to the stable colouring.
    #[arg(long, default_value = "inf", value_parser = parse_with::<Rounds>)]
    pub rounds: Rounds,

    /// Start from node labels when the dataset has them.
    #[arg(long)]
    pub labels: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FeasibilityArgs {
    /// Built-in instance: `a`, `b`, `c`, `d`, `late-separation` or
    /// `mirrored-triangles`. Without it, a dataset graph is checked.
    #[arg(long)]
    pub fixture: Option<String>,

    #[command(flatten)]
    pub data: DatasetArgs,

    /// Dataset graph to check against its spectral reference partition.
    #[arg(long, default_value_t = 0)]
    pub graph: usize,

    #[arg(long, default_value = "auto", value_parser = parse_with::<ClusterRule>)]
    pub clusters: ClusterRule,

    /// Laplacian for spectral clustering: `sym` or `unnormalized`.
    #[arg(long, default_value = "sym", value_parser = parse_with::<Laplacian>)]
    pub laplacian: Laplacian,

    #[arg(long, default_value_t = 10)]
    pub max_rounds: usize,

    /// Start from node labels when the dataset has them.
    #[arg(long)]
    pub labels: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceList(pub Vec<FeatureSource>);

#[derive(Debug, Clone, PartialEq)]
pub struct RoundsList(pub Vec<Rounds>);

fn parse_with<T: std::str::FromStr<Err = poolq_core::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: poolq_core::Error| e.to_string())
}

fn parse_sources(s: &str) -> Result<SourceList, String> {
    if s == "all" {
        return Ok(SourceList(FeatureSource::ALL.to_vec()));
    }
    s.split(',')
        .map(|x| parse_with(x.trim()))
        .collect::<Result<_, _>>()
        .map(SourceList)
}

fn parse_rounds(s: &str) -> Result<RoundsList, String> {
    s.split(',')
        .map(|x| parse_with(x.trim()))
        .collect::<Result<_, _>>()
        .map(RoundsList)
}
