//! Spectral reference partitions and topology-derived positional encodings.
//!
//! Reference partitions embed nodes with the eigenvectors of the `k` smallest
//! eigenvalues of the symmetric normalised Laplacian
//! `I - D^{-1/2} A D^{-1/2}`, normalise each embedded row, and run k-means
//! (k-means++ seeding, 20 restarts). Isolated nodes get identity rows.

mod eigen;
mod kmeans;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use eigen::{check_symmetric, sym_eigen, EigenDecomposition};
pub use kmeans::{kmeans, KMeansFit};

use crate::discretize::CosineSimilarity;
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::matrix::Matrix;

pub const KMEANS_RESTARTS: usize = 20;

/// How many clusters a reference partition gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ClusterRule {
    /// `max(2, round(sqrt(n / 2)))`, capped at `n`.
    Auto,
    Fixed(usize),
}

impl ClusterRule {
    pub fn resolve(self, n: usize) -> usize {
        let k = match self {
            ClusterRule::Auto => ((n as f64 / 2.0).sqrt().round() as usize).max(2),
            ClusterRule::Fixed(k) => k,
        };
        k.min(n).max(1)
    }
}

impl fmt::Display for ClusterRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterRule::Auto => f.write_str("auto"),
            ClusterRule::Fixed(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for ClusterRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ClusterRule::Auto),
            other => match other.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(ClusterRule::Fixed(k)),
                _ => Err(Error::InvalidArgument(format!(
                    "bad cluster count {other:?}"
                ))),
            },
        }
    }
}

impl From<ClusterRule> for String {
    fn from(r: ClusterRule) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for ClusterRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Feature affinity used before clustering node features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Affinity {
    /// `(1 + cos) / 2`.
    #[default]
    Cosine,
    /// Gaussian kernel with bandwidth equal to the median pairwise distance.
    Rbf,
}

impl fmt::Display for Affinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Affinity::Cosine => "cosine",
            Affinity::Rbf => "rbf",
        })
    }
}

impl FromStr for Affinity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosine" => Ok(Affinity::Cosine),
            "rbf" => Ok(Affinity::Rbf),
            other => Err(Error::InvalidArgument(format!(
                "unknown affinity {other:?}"
            ))),
        }
    }
}

/// Graph Laplacian used by spectral clustering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Laplacian {
    /// `I - D^{-1/2} W D^{-1/2}`, with row-normalised embeddings.
    #[default]
    Sym,
    /// `D - W`, with raw embeddings.
    Unnormalized,
}

impl fmt::Display for Laplacian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Laplacian::Sym => "sym",
            Laplacian::Unnormalized => "unnormalized",
        })
    }
}

impl FromStr for Laplacian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Laplacian::Sym),
            "unnormalized" => Ok(Laplacian::Unnormalized),
            other => Err(Error::InvalidArgument(format!(
                "unknown Laplacian {other:?}"
            ))),
        }
    }
}

/// `D - W` for a symmetric nonnegative weight matrix.
pub fn unnormalized_laplacian(w: &Matrix) -> Matrix {
    let n = w.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = w.row(i).iter().sum();
        for j in 0..n {
            l[(i, j)] = -w[(i, j)];
        }
        l[(i, i)] += d;
    }
    l
}

/// `I - D^{-1/2} W D^{-1/2}` for a symmetric nonnegative weight matrix.
pub fn normalized_laplacian(w: &Matrix) -> Matrix {
    let n = w.rows();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|i| {
            let d: f64 = w.row(i).iter().sum();
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            l[(i, j)] -= inv_sqrt[i] * w[(i, j)] * inv_sqrt[j];
        }
    }
    l
}

/// Spectral clustering of a weighted adjacency matrix.
pub fn spectral_partition_weighted(
    w: &Matrix,
    k: usize,
    seed: u64,
    laplacian: Laplacian,
) -> Result<Partition> {
    let n = w.rows();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "cluster count must lie in 1..={n}, got {k}"
        )));
    }
    let eig = sym_eigen(&match laplacian {
        Laplacian::Sym => normalized_laplacian(w),
        Laplacian::Unnormalized => unnormalized_laplacian(w),
    })?;
    let mut embedding = Matrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            embedding[(i, j)] = eig.vectors[(i, j)];
        }
        let norm = embedding.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
        if laplacian == Laplacian::Sym && norm > 1e-12 {
            embedding.row_mut(i).iter_mut().for_each(|x| *x /= norm);
        }
    }
    let fit = kmeans(&embedding, k, KMEANS_RESTARTS, seed)?;
    Partition::from_labels(&fit.labels)
}

/// Reference partition of a graph's topology.
pub fn spectral_partition(g: &Graph, k: usize, seed: u64) -> Result<Partition> {
    spectral_partition_with(g, k, seed, Laplacian::Sym)
}

pub fn spectral_partition_with(
    g: &Graph,
    k: usize,
    seed: u64,
    laplacian: Laplacian,
) -> Result<Partition> {
    spectral_partition_weighted(&g.adjacency(), k, seed, laplacian)
}

pub fn feature_affinity(x: &Matrix, affinity: Affinity) -> Result<Matrix> {
    let n = x.rows();
    let mut w = Matrix::zeros(n, n);
    match affinity {
        Affinity::Cosine => {
            let sim = CosineSimilarity::new(x)?;
            for i in 0..n {
                for j in i + 1..n {
                    let a = (0.5 * (1.0 + sim.get(i, j))).clamp(0.0, 1.0);
                    w[(i, j)] = a;
                    w[(j, i)] = a;
                }
            }
        }
        Affinity::Rbf => {
            // Validates finiteness.
            CosineSimilarity::new(x)?;
            let mut d2 = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    d2.push(
                        x.row(i)
                            .iter()
                            .zip(x.row(j))
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>(),
                    );
                }
            }
            let mut sorted: Vec<f64> = d2.iter().map(|d| d.sqrt()).collect();
            sorted.sort_by(f64::total_cmp);
            let median = sorted.get(sorted.len() / 2).copied().unwrap_or(0.0);
            let sigma = if median > 0.0 { median } else { 1.0 };
            let mut it = d2.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let a = (-it.next().unwrap_or_default() / (2.0 * sigma * sigma)).exp();
                    w[(i, j)] = a;
                    w[(j, i)] = a;
                }
            }
        }
    }
    Ok(w)
}

/// Spectral clustering of node feature rows.
pub fn feature_spectral_partition(
    x: &Matrix,
    k: usize,
    seed: u64,
    affinity: Affinity,
    laplacian: Laplacian,
) -> Result<Partition> {
    spectral_partition_weighted(&feature_affinity(x, affinity)?, k, seed, laplacian)
}

/// Flip a vector so its largest-magnitude entry is positive; magnitude ties
/// go to the lowest index.
fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|x| x.abs() >= max - 1e-12 * max)
        .unwrap_or(0);
    if v[pivot] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Laplacian positional encoding: eigenvectors 2..=d+1 of the normalised
/// Laplacian, sign-fixed, zero-padded when the graph is too small.
pub fn laplacian_pe(g: &Graph, d: usize) -> Result<Matrix> {
    let n = g.n();
    let eig = sym_eigen(&normalized_laplacian(&g.adjacency()))?;
    let mut pe = Matrix::zeros(n, d);
    for j in 0..d.min(n.saturating_sub(1)) {
        let mut col = eig.vector(j + 1);
        fix_sign(&mut col);
        for (i, x) in col.into_iter().enumerate() {
            pe[(i, j)] = x;
        }
    }
    Ok(pe)
}

/// Random-walk positional encoding: column `t - 1` is the diagonal of
/// `(D^{-1} A)^t` for `t = 1..=d`.
pub fn random_walk_pe(g: &Graph, d: usize) -> Result<Matrix> {
    let n = g.n();
    let a = g.adjacency();
    let mut p = Matrix::zeros(n, n);
    for i in 0..n {
        let deg: f64 = a.row(i).iter().sum();
        if deg > 0.0 {
            for j in 0..n {
                p[(i, j)] = a[(i, j)] / deg;
            }
        }
    }
    let mut pe = Matrix::zeros(n, d);
    let mut power = Matrix::identity(n);
    for t in 0..d {
        power = power.matmul(&p)?;
        for i in 0..n {
            pe[(i, t)] = power[(i, i)];
        }
    }
    Ok(pe)
}
