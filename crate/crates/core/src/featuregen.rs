//! Random feature and colouring baselines.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize_colouring, Colouring, Graph};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomMode {
    /// Every node gets the same one-hot row.
    Same,
    /// The first `ceil(n/2)` nodes get distinct one-hots; the rest copy a
    /// uniformly drawn row of the first half.
    Mixed,
    /// Every node gets its own one-hot row.
    Distinct,
}

impl fmt::Display for RandomMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomMode::Same => "same",
            RandomMode::Mixed => "mixed",
            RandomMode::Distinct => "distinct",
        })
    }
}

impl FromStr for RandomMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "same" => Ok(RandomMode::Same),
            "mixed" => Ok(RandomMode::Mixed),
            "distinct" => Ok(RandomMode::Distinct),
            other => Err(Error::InvalidArgument(format!(
                "unknown random feature mode {other:?}"
            ))),
        }
    }
}

/// Per-graph seed derived from a run seed and the graph's dataset index.
pub fn derive_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Index of the hot entry of each row, per [`random_features`] mode.
pub fn random_hot_indices(n: usize, mode: RandomMode, seed: u64) -> Vec<usize> {
    match mode {
        RandomMode::Same => vec![0; n],
        RandomMode::Distinct => (0..n).collect(),
        RandomMode::Mixed => {
            let half = n.div_ceil(2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|v| {
                    if v < half {
                        v
                    } else {
                        rng.random_range(0..half)
                    }
                })
                .collect()
        }
    }
}

/// One-hot random features for the nodes of `g`.
pub fn random_features(g: &Graph, mode: RandomMode, seed: u64) -> Matrix {
    let n = g.n();
    let hot = random_hot_indices(n, mode, seed);
    let d = match mode {
        RandomMode::Same => 1,
        RandomMode::Mixed => n.div_ceil(2),
        RandomMode::Distinct => n,
    };
    let mut x = Matrix::zeros(n, d);
    for (v, &h) in hot.iter().enumerate() {
        x[(v, h)] = 1.0;
    }
    x
}

/// Raw i.i.d. uniform colours from `0..k`, not canonicalized, so that equal
/// ids mean the same colour across graphs.
pub fn random_labels(n: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "random colouring needs 1 <= k <= {n}, got {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| rng.random_range(0..k)).collect())
}

/// Random colours from `0..k` in which every colour occurs: a random set of
/// `k` nodes gets the colours `0..k` once each, the rest draw i.i.d.
pub fn random_surjective_labels(n: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    let mut labels = random_labels(n, k, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x5EED);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(&mut rng);
    for (c, &v) in nodes[..k].iter().enumerate() {
        labels[v] = c;
    }
    Ok(labels)
}

pub fn random_colouring(g: &Graph, k: usize, seed: u64) -> Result<Colouring> {
    canonicalize_colouring(&random_labels(g.n(), k, seed)?)
}
