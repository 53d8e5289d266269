//! Serializable run reports: JSON with the fully resolved configuration, and
//! a CSV table with one row per feature source and `(Q̄, NMI, τ, k/N)`
//! columns per refinement depth.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alignment::NmiNorm;
use crate::discretize::Alphabet;
use crate::error::Result;
use crate::ingest::DatasetSplit;
use crate::pipeline::{EmpiricalMode, Evaluation, FeatureSource, PerGraph, PipelineConfig};
use crate::quality::{SweepPoint, TransferVariant};
use crate::refine::Rounds;
use crate::spectral::{Affinity, ClusterRule, Laplacian, KMEANS_RESTARTS};

/// Every setting that influences the numbers in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub dataset: String,
    pub feature_sources: Vec<FeatureSource>,
    pub cr_rounds: Vec<Rounds>,
    pub variant: TransferVariant,
    pub k_rule: ClusterRule,
    pub k_auto_formula: String,
    pub kmeans_restarts: usize,
    pub reference_partition: String,
    pub laplacian: Laplacian,
    pub affinity: Affinity,
    pub nmi_normalisation: NmiNorm,
    pub alphabet: Alphabet,
    pub tau_grid: Vec<f64>,
    pub split_fraction: f64,
    pub seed: u64,
    pub pe_dim: usize,
    pub empirical: EmpiricalMode,
}

impl ResolvedConfig {
    pub fn new(
        dataset: &str,
        sources: &[FeatureSource],
        rounds: &[Rounds],
        config: &PipelineConfig,
    ) -> Self {
        Self {
            dataset: dataset.to_string(),
            feature_sources: sources.to_vec(),
            cr_rounds: rounds.to_vec(),
            variant: config.variant,
            k_rule: config.clusters,
            k_auto_formula: "max(2, round(sqrt(n / 2))), capped at n".into(),
            kmeans_restarts: KMEANS_RESTARTS,
            reference_partition: "spectral clustering of A".into(),
            laplacian: config.laplacian,
            affinity: Affinity::default(),
            nmi_normalisation: NmiNorm::default(),
            alphabet: config.alphabet,
            tau_grid: config.tau_grid.clone(),
            split_fraction: config.split_fraction,
            seed: config.seed,
            pe_dim: config.pe_dim,
            empirical: config.empirical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub dataset: String,
    pub feature_source: FeatureSource,
    pub cr_rounds: Rounds,
    pub tau: Option<f64>,
    pub variant: TransferVariant,
    pub k_rule: ClusterRule,
    pub seed: u64,
    pub k_over_n: f64,
    pub gamma_bar: f64,
    pub lambda_bar: f64,
    pub q_bar: f64,
    pub invalid_colours: usize,
    pub unmatched_groups: usize,
    pub per_graph: Vec<PerGraph>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve: Option<Vec<SweepPoint>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityRun {
    pub config: ResolvedConfig,
    pub split: DatasetSplit,
    pub rows: Vec<ResultRow>,
}

impl QualityRun {
    pub fn new(config: ResolvedConfig, split: DatasetSplit, evaluations: Vec<Evaluation>) -> Self {
        let rows = evaluations
            .into_iter()
            .map(|e| ResultRow {
                dataset: config.dataset.clone(),
                feature_source: e.feature_source,
                cr_rounds: e.cr_rounds,
                tau: e.tau,
                variant: config.variant,
                k_rule: config.k_rule,
                seed: config.seed,
                k_over_n: e.k_over_n,
                gamma_bar: e.gamma_bar,
                lambda_bar: e.lambda_bar,
                q_bar: e.q_bar,
                invalid_colours: e.invalid_colours,
                unmatched_groups: e.unmatched_groups,
                per_graph: e.per_graph,
                curve: e.curve,
            })
            .collect();
        Self {
            config,
            split,
            rows,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)
            .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?
            + "\n")
    }

    /// One line per feature source; NMI cells stay empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature_source");
        for r in &self.config.cr_rounds {
            let _ = write!(out, ",q_bar_cr{r},nmi_cr{r},tau_cr{r},k_over_n_cr{r}");
        }
        out.push('\n');
        for source in &self.config.feature_sources {
            out.push_str(source.as_str());
            for r in &self.config.cr_rounds {
                match self
                    .rows
                    .iter()
                    .find(|row| row.feature_source == *source && row.cr_rounds == *r)
                {
                    Some(row) => {
                        let tau = row.tau.map(|t| format!("{t:.2}")).unwrap_or_default();
                        let _ = write!(out, ",{:.4},,{tau},{:.4}", row.q_bar, row.k_over_n);
                    }
                    None => out.push_str(",,,,"),
                }
            }
            out.push('\n');
        }
        out
    }
}
