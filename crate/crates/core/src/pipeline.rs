//! End-to-end scoring of a dataset: feature source, shared colour alphabet,
//! optional refinement, reference partitions and dataset-level quality.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discretize::{shared_colours, tau_grid, Alphabet, CurvePoint, Discretizer};
use crate::error::{Error, Result};
use crate::featuregen::{derive_seed, random_hot_indices, random_surjective_labels, RandomMode};
use crate::graph::{Colouring, Partition};
use crate::ingest::{split_seen_unseen, DatasetBundle, DatasetSplit};
use crate::matrix::Matrix;
use crate::quality::{
    coloured_dataset, gamma, q_bar, relative_colour_count, sweep_tau, SweepPoint, TransferVariant,
};
use crate::refine::Rounds;
use crate::spectral::{
    laplacian_pe, random_walk_pe, spectral_partition_with, ClusterRule, Laplacian,
};

pub const DEFAULT_PE_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureSource {
    #[serde(rename = "empirical")]
    Empirical,
    #[serde(rename = "same")]
    Same,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "distinct")]
    Distinct,
    #[serde(rename = "lap-pe")]
    LapPe,
    #[serde(rename = "rw-pe")]
    RwPe,
}

impl FeatureSource {
    pub const ALL: [FeatureSource; 6] = [
        FeatureSource::Empirical,
        FeatureSource::Same,
        FeatureSource::Mixed,
        FeatureSource::Distinct,
        FeatureSource::LapPe,
        FeatureSource::RwPe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureSource::Empirical => "empirical",
            FeatureSource::Same => "same",
            FeatureSource::Mixed => "mixed",
            FeatureSource::Distinct => "distinct",
            FeatureSource::LapPe => "lap-pe",
            FeatureSource::RwPe => "rw-pe",
        }
    }
}

impl fmt::Display for FeatureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureSource::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown feature source {s:?}")))
    }
}

/// Which node data counts as the dataset's own features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmpiricalMode {
    /// Discrete labels when present, otherwise continuous attributes.
    #[default]
    Auto,
    Labels,
    Attributes,
}

impl fmt::Display for EmpiricalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmpiricalMode::Auto => "auto",
            EmpiricalMode::Labels => "labels",
            EmpiricalMode::Attributes => "attributes",
        })
    }
}

impl FromStr for EmpiricalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EmpiricalMode::Auto),
            "labels" => Ok(EmpiricalMode::Labels),
            "attributes" => Ok(EmpiricalMode::Attributes),
            other => Err(Error::InvalidArgument(format!(
                "unknown empirical mode {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub split_fraction: f64,
    pub seed: u64,
    pub clusters: ClusterRule,
    #[serde(default)]
    pub laplacian: Laplacian,
    pub variant: TransferVariant,
    pub alphabet: Alphabet,
    pub tau_grid: Vec<f64>,
    pub pe_dim: usize,
    pub empirical: EmpiricalMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            split_fraction: 0.8,
            seed: 0,
            clusters: ClusterRule::Auto,
            laplacian: Laplacian::Sym,
            variant: TransferVariant::Full,
            alphabet: Alphabet::Ordinal,
            tau_grid: tau_grid(0.0, 0.01, 1.0).unwrap_or_default(),
            pe_dim: DEFAULT_PE_DIM,
            empirical: EmpiricalMode::Auto,
        }
    }
}

/// Split and spectral reference partitions for one dataset and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prepared {
    pub split: DatasetSplit,
    pub partitions: Vec<Partition>,
}

pub fn prepare(bundle: &DatasetBundle, config: &PipelineConfig) -> Result<Prepared> {
    let split = split_seen_unseen(bundle, config.split_fraction, config.seed)?;
    let partitions = bundle
        .graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            spectral_partition_with(
                g,
                config.clusters.resolve(g.n()),
                derive_seed(config.seed, i),
                config.laplacian,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared { split, partitions })
}

/// Initial node data of every graph, before thresholding and refinement.
#[derive(Debug, Clone)]
pub enum SourceColours {
    /// Colour ids already shared across graphs.
    Discrete(Vec<Vec<usize>>),
    /// Feature matrices with precomputed pairwise similarities.
    Continuous {
        features: Vec<Matrix>,
        discretizers: Vec<Discretizer>,
    },
}

impl SourceColours {
    pub fn is_continuous(&self) -> bool {
        matches!(self, SourceColours::Continuous { .. })
    }

    /// Shared-alphabet colours at threshold `tau`; discrete sources ignore it.
    pub fn colours_at(&self, tau: f64, alphabet: Alphabet) -> Result<Vec<Vec<usize>>> {
        match self {
            SourceColours::Discrete(c) => Ok(c.clone()),
            SourceColours::Continuous {
                features,
                discretizers,
            } => {
                let local = discretizers
                    .par_iter()
                    .map(|d| d.colours(tau))
                    .collect::<Result<Vec<Colouring>>>()?;
                let refs: Vec<&Matrix> = features.iter().collect();
                shared_colours(&local, &refs, alphabet)
            }
        }
    }
}

fn intern<K: std::hash::Hash + Eq>(keys: Vec<Vec<K>>) -> Vec<Vec<usize>> {
    let mut table: HashMap<K, usize> = HashMap::new();
    keys.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|k| {
                    let next = table.len();
                    *table.entry(k).or_insert(next)
                })
                .collect()
        })
        .collect()
}

fn continuous(features: Vec<Matrix>) -> Result<SourceColours> {
    let discretizers = features
        .par_iter()
        .map(Discretizer::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(SourceColours::Continuous {
        features,
        discretizers,
    })
}

pub fn source_colours(
    bundle: &DatasetBundle,
    source: FeatureSource,
    config: &PipelineConfig,
) -> Result<SourceColours> {
    let graphs = &bundle.graphs;
    let random = |mode: RandomMode| {
        let keys = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let d = match mode {
                    RandomMode::Same => 1,
                    RandomMode::Mixed => g.n().div_ceil(2),
                    RandomMode::Distinct => g.n(),
                };
                random_hot_indices(g.n(), mode, derive_seed(config.seed, i))
                    .into_iter()
                    .map(|h| (d, h))
                    .collect()
            })
            .collect();
        SourceColours::Discrete(intern(keys))
    };
    match source {
        FeatureSource::Same => Ok(random(RandomMode::Same)),
        FeatureSource::Mixed => Ok(random(RandomMode::Mixed)),
        FeatureSource::Distinct => Ok(random(RandomMode::Distinct)),
        FeatureSource::LapPe => continuous(
            graphs
                .par_iter()
                .map(|g| laplacian_pe(g, config.pe_dim))
                .collect::<Result<_>>()?,
        ),
        FeatureSource::RwPe => continuous(
            graphs
                .par_iter()
                .map(|g| random_walk_pe(g, config.pe_dim))
                .collect::<Result<_>>()?,
        ),
        FeatureSource::Empirical => {
            let use_labels = match config.empirical {
                EmpiricalMode::Labels => true,
                EmpiricalMode::Attributes => false,
                EmpiricalMode::Auto => {
                    bundle.node_labels.is_some() && !bundle.features_from_attributes
                }
            };
            if use_labels {
                let labels = bundle.node_labels.as_ref().ok_or_else(|| {
                    Error::InvalidArgument(format!("dataset {} has no node labels", bundle.name))
                })?;
                let mut alphabet: Vec<i64> = labels.iter().flatten().copied().collect();
                alphabet.sort_unstable();
                alphabet.dedup();
                Ok(SourceColours::Discrete(
                    labels
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|l| alphabet.binary_search(l).unwrap_or_default())
                                .collect()
                        })
                        .collect(),
                ))
            } else {
                if !bundle.features_from_attributes {
                    return Err(Error::InvalidArgument(format!(
                        "dataset {} has no node attributes",
                        bundle.name
                    )));
                }
                let features = graphs
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        g.features()
                            .cloned()
                            .ok_or(Error::MissingFeatures { graph: i })
                    })
                    .collect::<Result<Vec<_>>>()?;
                continuous(features)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerGraph {
    pub graph: usize,
    pub seen: bool,
    pub nodes: usize,
    pub groups: usize,
    pub colours: usize,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub feature_source: FeatureSource,
    pub cr_rounds: Rounds,
    /// Chosen threshold; `None` for discrete sources.
    pub tau: Option<f64>,
    pub k_over_n: f64,
    pub gamma_bar: f64,
    pub lambda_bar: f64,
    pub q_bar: f64,
    pub invalid_colours: usize,
    pub unmatched_groups: usize,
    pub per_graph: Vec<PerGraph>,
    /// Full threshold curve for continuous sources.
    pub curve: Option<Vec<SweepPoint>>,
}

pub fn evaluate(
    bundle: &DatasetBundle,
    prepared: &Prepared,
    source: FeatureSource,
    colours: &SourceColours,
    cr: Rounds,
    config: &PipelineConfig,
) -> Result<Evaluation> {
    let graphs = &bundle.graphs;
    let (tau, curve, init) = if colours.is_continuous() {
        let sweep = sweep_tau(
            graphs,
            &prepared.partitions,
            &prepared.split,
            cr,
            &config.tau_grid,
            config.variant,
            |tau| colours.colours_at(tau, config.alphabet),
        )?;
        let init = colours.colours_at(sweep.tau_star, config.alphabet)?;
        (Some(sweep.tau_star), Some(sweep.curve), init)
    } else {
        (None, None, colours.colours_at(0.0, config.alphabet)?)
    };
    let dataset = coloured_dataset(graphs, &prepared.partitions, &init, cr)?;
    let report = q_bar(&dataset, &prepared.split, config.variant)?;
    let colourings: Vec<Vec<usize>> = dataset.iter().map(|g| g.colours.clone()).collect();
    let mut seen = vec![false; graphs.len()];
    prepared.split.seen.iter().for_each(|&i| seen[i] = true);
    let per_graph = dataset
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let v = gamma(&g.colours, &g.partition)?;
            Ok(PerGraph {
                graph: i,
                seen: seen[i],
                nodes: g.colours.len(),
                groups: g.partition.k(),
                colours: v.num_colours,
                gamma: v.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Evaluation {
        feature_source: source,
        cr_rounds: cr,
        tau,
        k_over_n: relative_colour_count(&colourings),
        gamma_bar: report.gamma,
        lambda_bar: report.lambda,
        q_bar: report.q,
        invalid_colours: report.invalid_colours.len(),
        unmatched_groups: report.unmatched_groups.len(),
        per_graph,
        curve,
    })
}

/// Evaluate every source at every refinement depth, in the given order.
pub fn run_grid(
    bundle: &DatasetBundle,
    sources: &[FeatureSource],
    rounds: &[Rounds],
    config: &PipelineConfig,
) -> Result<Vec<Evaluation>> {
    let prepared = prepare(bundle, config)?;
    let mut out = Vec::with_capacity(sources.len() * rounds.len());
    for &source in sources {
        let colours = source_colours(bundle, source, config)?;
        for &cr in rounds {
            out.push(evaluate(bundle, &prepared, source, &colours, cr, config)?);
        }
    }
    Ok(out)
}

/// One point of the random-colouring curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColourCurvePoint {
    /// Requested colours per node.
    pub fraction: f64,
    pub cr_rounds: Rounds,
    /// Realized colours per node after refinement.
    pub k_over_n: f64,
    pub gamma_bar: f64,
    pub lambda_bar: f64,
    pub q_bar: f64,
}

/// Score random colourings using exactly `max(1, round(f n))` colours per
/// graph for every fraction `f` and refinement depth.
pub fn random_colouring_curve(
    bundle: &DatasetBundle,
    prepared: &Prepared,
    fractions: &[f64],
    rounds: &[Rounds],
    variant: TransferVariant,
    seed: u64,
) -> Result<Vec<ColourCurvePoint>> {
    let graphs = &bundle.graphs;
    let mut out = Vec::with_capacity(fractions.len() * rounds.len());
    for &fraction in fractions {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "colour fraction must lie in (0, 1], got {fraction}"
            )));
        }
        let init = graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| {
                let k = ((fraction * g.n() as f64).round() as usize).clamp(1, g.n());
                random_surjective_labels(g.n(), k, derive_seed(seed, i))
            })
            .collect::<Result<Vec<_>>>()?;
        for &cr in rounds {
            let dataset = coloured_dataset(graphs, &prepared.partitions, &init, cr)?;
            let report = q_bar(&dataset, &prepared.split, variant)?;
            let colourings: Vec<Vec<usize>> = dataset.into_iter().map(|g| g.colours).collect();
            out.push(ColourCurvePoint {
                fraction,
                cr_rounds: cr,
                k_over_n: relative_colour_count(&colourings),
                gamma_bar: report.gamma,
                lambda_bar: report.lambda,
                q_bar: report.q,
            });
        }
    }
    Ok(out)
}

/// Dataset-mean `k/N` of a continuous source at every threshold, before
/// refinement.
pub fn threshold_curve(colours: &SourceColours, grid: &[f64]) -> Result<Vec<CurvePoint>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.par_iter()
        .map(|&tau| {
            let c = colours.colours_at(tau, Alphabet::Ordinal)?;
            Ok(CurvePoint {
                tau,
                k_over_n: relative_colour_count(&c),
            })
        })
        .collect()
}
