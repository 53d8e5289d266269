//! Normalised mutual information between partitions and the pairwise
//! alignment matrix between topology and feature clusterings.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::matrix::Matrix;
use crate::spectral::{
    feature_spectral_partition, spectral_partition_with, Affinity, ClusterRule, Laplacian,
};

/// How mutual information is normalised by the two entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NmiNorm {
    /// `sqrt(H(P) H(Q))`
    #[default]
    Sqrt,
    /// `(H(P) + H(Q)) / 2`
    Arithmetic,
}

impl fmt::Display for NmiNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NmiNorm::Sqrt => "sqrt",
            NmiNorm::Arithmetic => "arithmetic",
        })
    }
}

impl FromStr for NmiNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" | "geometric" => Ok(NmiNorm::Sqrt),
            "arithmetic" | "mean" => Ok(NmiNorm::Arithmetic),
            other => Err(Error::InvalidArgument(format!(
                "unknown NMI normalisation {other:?}"
            ))),
        }
    }
}

fn entropy(counts: impl Iterator<Item = usize>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// NMI with the default square-root normalisation.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    nmi_with(p, q, NmiNorm::Sqrt)
}

/// NMI in `[0, 1]`, natural logarithms. When either entropy is zero the
/// result is 1 if both partitions have a single group and 0 otherwise.
pub fn nmi_with(p: &Partition, q: &Partition, norm: NmiNorm) -> Result<f64> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch {
            what: "partition node count",
            expected: p.n(),
            found: q.n(),
        });
    }
    let n = p.n() as f64;
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..p.n() {
        *joint.entry((p.group_of(v), q.group_of(v))).or_default() += 1;
    }
    let hp = entropy(p.groups().iter().map(Vec::len), n);
    let hq = entropy(q.groups().iter().map(Vec::len), n);
    if hp == 0.0 || hq == 0.0 {
        return Ok(if p.k() == 1 && q.k() == 1 { 1.0 } else { 0.0 });
    }
    let mut keys: Vec<_> = joint.into_iter().collect();
    keys.sort_unstable();
    let mi: f64 = keys
        .iter()
        .map(|&((a, b), c)| {
            let pab = c as f64 / n;
            let pa = p.groups()[a].len() as f64 / n;
            let pb = q.groups()[b].len() as f64 / n;
            pab * (pab / (pa * pb)).ln()
        })
        .sum();
    let denom = match norm {
        NmiNorm::Sqrt => (hp * hq).sqrt(),
        NmiNorm::Arithmetic => 0.5 * (hp + hq),
    };
    Ok((mi / denom).clamp(0.0, 1.0))
}

/// Symmetric matrix of pairwise NMI values between named partitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentMatrix {
    pub labels: Vec<String>,
    pub values: Matrix,
}

fn pairwise(labels: Vec<String>, parts: &[Partition], norm: NmiNorm) -> Result<AlignmentMatrix> {
    let m = parts.len();
    let mut values = Matrix::identity(m);
    for i in 0..m {
        for j in i + 1..m {
            let x = nmi_with(&parts[i], &parts[j], norm)?;
            values[(i, j)] = x;
            values[(j, i)] = x;
        }
    }
    Ok(AlignmentMatrix { labels, values })
}

fn reference_pair(
    g: &Graph,
    index: usize,
    k: usize,
    seed: u64,
    affinity: Affinity,
    laplacian: Laplacian,
) -> Result<[Partition; 2]> {
    let x = g
        .features()
        .ok_or(Error::MissingFeatures { graph: index })?;
    Ok([
        spectral_partition_with(g, k, seed, laplacian)?,
        feature_spectral_partition(x, k, seed, affinity, laplacian)?,
    ])
}

/// NMI between topology clusters `SC(A)`, feature clusters `SC(X)` and any
/// extra partitions, for one graph.
pub fn alignment_matrix(
    g: &Graph,
    k: usize,
    seed: u64,
    affinity: Affinity,
    laplacian: Laplacian,
    extra: &[(String, Partition)],
) -> Result<AlignmentMatrix> {
    let [a, x] = reference_pair(g, 0, k, seed, affinity, laplacian)?;
    let mut labels = vec!["SC(A)".to_string(), "SC(X)".to_string()];
    let mut parts = vec![a, x];
    for (name, p) in extra {
        labels.push(name.clone());
        parts.push(p.clone());
    }
    pairwise(labels, &parts, NmiNorm::Sqrt)
}

/// Mean of the per-graph `SC(A)` / `SC(X)` matrices over a dataset. Graph
/// `i` uses seed `seeds[i]`.
pub fn dataset_alignment(
    graphs: &[Graph],
    rule: ClusterRule,
    seeds: &[u64],
    affinity: Affinity,
    laplacian: Laplacian,
    norm: NmiNorm,
) -> Result<AlignmentMatrix> {
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("no graphs to align".into()));
    }
    if seeds.len() != graphs.len() {
        return Err(Error::SizeMismatch {
            what: "per-graph seeds",
            expected: graphs.len(),
            found: seeds.len(),
        });
    }
    let mats = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let parts = reference_pair(g, i, rule.resolve(g.n()), seeds[i], affinity, laplacian)?;
            pairwise(vec![], &parts, norm).map(|m| m.values)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mean = Matrix::zeros(2, 2);
    for m in &mats {
        for i in 0..2 {
            for j in 0..2 {
                mean[(i, j)] += m[(i, j)] / mats.len() as f64;
            }
        }
    }
    Ok(AlignmentMatrix {
        labels: vec!["SC(A)".into(), "SC(X)".into()],
        values: mean,
    })
}
