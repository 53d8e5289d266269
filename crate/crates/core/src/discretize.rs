//! Continuous features to discrete colours.
//!
//! Two nodes are linked when the cosine similarity of their feature rows is at
//! least `tau`; colours are the connected components of that similarity graph
//! (single-linkage closure). A zero row is similar (1.0) only to other zero
//! rows. Similarities within `SIMILARITY_SLACK` of the threshold count as
//! reaching it, so exactly parallel rows merge at `tau = 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize_colouring, Colouring};
use crate::matrix::Matrix;

pub const SIMILARITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Unit-normalised rows plus a zero-row mask.
#[derive(Debug, Clone)]
pub struct CosineSimilarity {
    unit: Matrix,
    zero: Vec<bool>,
}

impl CosineSimilarity {
    pub fn new(x: &Matrix) -> Result<Self> {
        if x.rows() == 0 {
            return Err(Error::EmptyGraph);
        }
        if x.cols() == 0 {
            return Err(Error::InvalidArgument(
                "feature matrix has no columns".into(),
            ));
        }
        let mut unit = x.clone();
        let mut zero = vec![false; x.rows()];
        for (i, is_zero) in zero.iter_mut().enumerate() {
            if let Some(col) = x.row(i).iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: i, col });
            }
            let norm = x.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                *is_zero = true;
            } else {
                unit.row_mut(i).iter_mut().for_each(|v| *v /= norm);
            }
        }
        Ok(Self { unit, zero })
    }

    pub fn len(&self) -> usize {
        self.zero.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zero.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (self.zero[i], self.zero[j]) {
            (true, true) => 1.0,
            (false, false) => self
                .unit
                .row(i)
                .iter()
                .zip(self.unit.row(j))
                .map(|(a, b)| a * b)
                .sum(),
            _ => 0.0,
        }
    }

    /// All pairwise similarities, upper triangle, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.get(i, j)));
            }
        }
        out
    }
}

fn components(n: usize, pairs: &[(usize, usize, f64)], tau: f64) -> Vec<usize> {
    let mut dsu = DisjointSet::new(n);
    for &(i, j, s) in pairs {
        if s >= tau - SIMILARITY_SLACK {
            dsu.union(i, j);
        }
    }
    (0..n).map(|i| dsu.find(i)).collect()
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!(
            "tau must lie in [0, 1], got {tau}"
        )));
    }
    Ok(())
}

/// Colour nodes by cosine-threshold components of their feature rows.
pub fn colours_from_features(x: &Matrix, tau: f64) -> Result<Colouring> {
    check_tau(tau)?;
    let sim = CosineSimilarity::new(x)?;
    canonicalize_colouring(&components(sim.len(), &sim.pairs(), tau))
}

/// Discretizes one feature matrix at many thresholds, reusing the pairwise
/// similarities.
#[derive(Debug, Clone)]
pub struct Discretizer {
    n: usize,
    pairs: Vec<(usize, usize, f64)>,
}

impl Discretizer {
    pub fn new(x: &Matrix) -> Result<Self> {
        let sim = CosineSimilarity::new(x)?;
        Ok(Self {
            n: sim.len(),
            pairs: sim.pairs(),
        })
    }

    pub fn colours(&self, tau: f64) -> Result<Colouring> {
        check_tau(tau)?;
        canonicalize_colouring(&components(self.n, &self.pairs, tau))
    }
}

/// How feature-derived colour classes of different graphs are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// Class `i` of every graph is the class of its `i`-th distinct
    /// representative in node order.
    #[default]
    Ordinal,
    /// Classes are keyed by their mean feature vector rounded to 9 decimals.
    Centroid,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Ordinal => "ordinal",
            Alphabet::Centroid => "centroid",
        })
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinal" => Ok(Alphabet::Ordinal),
            "centroid" => Ok(Alphabet::Centroid),
            other => Err(Error::InvalidArgument(format!(
                "unknown alphabet {other:?}"
            ))),
        }
    }
}

/// Map per-graph colourings of feature matrices onto one colour id space.
pub fn shared_colours(
    local: &[Colouring],
    features: &[&Matrix],
    alphabet: Alphabet,
) -> Result<Vec<Vec<usize>>> {
    if local.len() != features.len() {
        return Err(Error::SizeMismatch {
            what: "feature matrices",
            expected: local.len(),
            found: features.len(),
        });
    }
    match alphabet {
        Alphabet::Ordinal => Ok(local.iter().map(|c| c.as_slice().to_vec()).collect()),
        Alphabet::Centroid => {
            let mut table: HashMap<Vec<i64>, usize> = HashMap::new();
            let mut out = Vec::with_capacity(local.len());
            for (c, x) in local.iter().zip(features) {
                let mut sums = Matrix::zeros(c.num_colours(), x.cols());
                let sizes = c.class_sizes();
                for (v, &k) in c.iter().enumerate() {
                    sums.row_mut(k)
                        .iter_mut()
                        .zip(x.row(v))
                        .for_each(|(s, y)| *s += y);
                }
                let ids: Vec<usize> = (0..c.num_colours())
                    .map(|k| {
                        let key = sums
                            .row(k)
                            .iter()
                            .map(|s| (s / sizes[k] as f64 * 1e9).round() as i64)
                            .collect();
                        let next = table.len();
                        *table.entry(key).or_insert(next)
                    })
                    .collect();
                out.push(c.iter().map(|&k| ids[k]).collect());
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub tau: f64,
    pub k_over_n: f64,
}

/// Relative colour count `k/N` for each threshold of an ascending grid.
pub fn colour_count_curve(x: &Matrix, taus: &[f64]) -> Result<Vec<CurvePoint>> {
    if taus.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if taus.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(
            "tau grid must be sorted ascending".into(),
        ));
    }
    let d = Discretizer::new(x)?;
    taus.iter()
        .map(|&tau| {
            let c = d.colours(tau)?;
            Ok(CurvePoint {
                tau,
                k_over_n: c.num_colours() as f64 / x.rows() as f64,
            })
        })
        .collect()
}

/// Inclusive grid `start, start + step, ..., end`, rounded to 1e-9.
pub fn tau_grid(start: f64, step: f64, end: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || end < start {
        return Err(Error::InvalidArgument(format!(
            "bad tau grid {start}:{step}:{end}"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}
