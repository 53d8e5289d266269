//! Colouring-based diagnostics for how well node features align with graph
//! topology, and whether a pooling layer's node-to-group assignment can be
//! expressed and transferred across graphs.
//!
//! The main entry points are [`quality`] for the validity, transferability
//! and combined scores, [`pipeline`] for scoring whole datasets, and
//! [`select`] for the constructive expressivity check.

pub mod alignment;
pub mod discretize;
pub mod error;
pub mod featuregen;
pub mod fixtures;
pub mod graph;
pub mod ingest;
pub mod matrix;
pub mod pipeline;
pub mod quality;
pub mod refine;
pub mod report;
pub mod select;
pub mod spectral;

pub use alignment::{alignment_matrix, dataset_alignment, nmi, nmi_with, AlignmentMatrix, NmiNorm};
pub use discretize::{
    colour_count_curve, colours_from_features, shared_colours, tau_grid, Alphabet, Discretizer,
};
pub use error::{Error, Result};
pub use featuregen::{derive_seed, random_colouring, random_features, random_labels, RandomMode};
pub use graph::{canonicalize_colouring, partition_from_assignment, Colouring, Graph, Partition};
pub use ingest::{load_tudataset, split_indices, split_seen_unseen, DatasetBundle, DatasetSplit};
pub use matrix::Matrix;
pub use pipeline::{EmpiricalMode, Evaluation, FeatureSource, PipelineConfig};
pub use quality::{
    gamma, gamma_bar, lambda_bar, lambda_full, lambda_group, lambda_ratio, q_bar, q_single,
    sweep_tau, ColouredGraph, OpCounter, QualityReport, TransferVariant,
};
pub use refine::{refine_colours, refine_joint, refinement_trajectory, Rounds, Trajectory};
pub use report::{QualityRun, ResolvedConfig};
pub use select::{
    construct_select, feasible_after_refinement, RefinementFeasibility, SelectOutcome,
};
pub use spectral::{
    laplacian_pe, random_walk_pe, spectral_partition, spectral_partition_with, Affinity,
    ClusterRule, Laplacian,
};
