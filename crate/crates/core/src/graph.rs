//! Core domain types: undirected multigraphs, node colourings and hard
//! partitions.
//!
//! Node indices are 0-based. Edges are stored as a multiset of unordered
//! pairs; repeated pairs are multiedges and count with multiplicity in
//! degrees, adjacency matrices and neighbour multisets. A self-loop adds the
//! node to its own neighbour list once per loop.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    features: Option<Matrix>,
    neighbours: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.features == other.features
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(Self {
            n,
            edges: out,
            features: None,
            neighbours: OnceLock::new(),
        })
    }

    pub fn with_features(mut self, features: Matrix) -> Result<Self> {
        if features.rows() != self.n {
            return Err(Error::SizeMismatch {
                what: "feature rows",
                expected: self.n,
                found: features.rows(),
            });
        }
        self.features = Some(features);
        Ok(self)
    }

    pub fn without_features(mut self) -> Self {
        self.features = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Undirected edge multiset, each pair stored as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn features(&self) -> Option<&Matrix> {
        self.features.as_ref()
    }

    /// Neighbour lists with multiplicity.
    pub fn neighbours(&self) -> &[Vec<usize>] {
        self.neighbours.get_or_init(|| {
            let mut adj = vec![Vec::new(); self.n];
            for &(u, v) in &self.edges {
                adj[u].push(v);
                if u != v {
                    adj[v].push(u);
                }
            }
            for list in &mut adj {
                list.sort_unstable();
            }
            adj
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbours().iter().map(Vec::len).collect()
    }

    pub fn adjacency(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for (u, list) in self.neighbours().iter().enumerate() {
            for &v in list {
                a[(u, v)] += 1.0;
            }
        }
        a
    }

    /// Connected components as canonical labels.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let adj = self.neighbours();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Relabel nodes: node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch {
                what: "permutation length",
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        if let Some(x) = &self.features {
            let mut y = Matrix::zeros(x.rows(), x.cols());
            for (i, &to) in perm.iter().enumerate() {
                y.row_mut(to).copy_from_slice(x.row(i));
            }
            g = g.with_features(y)?;
        }
        Ok(g)
    }
}

/// A total node colouring with contiguous colour indices `0..num_colours`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring {
    colours: Vec<usize>,
    num_colours: usize,
}

impl Colouring {
    pub fn as_slice(&self) -> &[usize] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    pub fn uniform(n: usize) -> Result<Self> {
        canonicalize_colouring(&vec![0usize; n])
    }

    pub fn discrete(n: usize) -> Result<Self> {
        canonicalize_colouring(&(0..n).collect::<Vec<_>>())
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_colours];
        for &c in &self.colours {
            sizes[c] += 1;
        }
        sizes
    }

    /// Whether every colour class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &Colouring) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut parent = vec![usize::MAX; self.num_colours];
        for (&c, &p) in self.colours.iter().zip(&coarser.colours) {
            if parent[c] == usize::MAX {
                parent[c] = p;
            } else if parent[c] != p {
                return false;
            }
        }
        true
    }
}

impl std::ops::Deref for Colouring {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.colours
    }
}

/// Relabel arbitrary labels to contiguous colours by order of first appearance.
pub fn canonicalize_colouring<T: Hash + Eq>(raw: &[T]) -> Result<Colouring> {
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut table: HashMap<&T, usize> = HashMap::with_capacity(raw.len());
    let colours = raw
        .iter()
        .map(|label| {
            let next = table.len();
            *table.entry(label).or_insert(next)
        })
        .collect();
    Ok(Colouring {
        colours,
        num_colours: table.len(),
    })
}

/// A hard partition of the nodes into nonempty disjoint groups.
///
/// Groups are kept in canonical order (by smallest member) and each group's
/// members are sorted, so structural equality is set-partition equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    membership: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

impl Partition {
    /// Build from per-node group labels of any hashable type.
    pub fn from_labels<T: Hash + Eq>(labels: &[T]) -> Result<Self> {
        let canon = canonicalize_colouring(labels)?;
        let mut groups = vec![Vec::new(); canon.num_colours()];
        for (v, &g) in canon.as_slice().iter().enumerate() {
            groups[g].push(v);
        }
        Ok(Self {
            membership: canon.colours,
            groups,
        })
    }

    pub fn from_groups(n: usize, groups: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (gi, g) in groups.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::InvalidArgument(format!("group {gi} is empty")));
            }
            for &v in g {
                if v >= n {
                    return Err(Error::InvalidArgument(format!(
                        "node {v} out of range for {n} nodes"
                    )));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "node {v} appears in more than one group"
                    )));
                }
                labels[v] = gi;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidArgument(format!("node {v} is in no group")));
        }
        Self::from_labels(&labels)
    }

    pub fn single(n: usize) -> Result<Self> {
        Self::from_labels(&vec![0u8; n])
    }

    pub fn n(&self) -> usize {
        self.membership.len()
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    /// Binary `n x k` assignment matrix with one 1 per row.
    pub fn assignment(&self) -> Matrix {
        let mut s = Matrix::zeros(self.n(), self.k());
        for (v, &g) in self.membership.iter().enumerate() {
            s[(v, g)] = 1.0;
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentPartition {
    pub partition: Partition,
    /// Columns of the assignment matrix that held no node.
    pub dropped_empty_groups: Vec<usize>,
}

/// Read a hard partition off a binary assignment matrix.
pub fn partition_from_assignment(s: &Matrix) -> Result<AssignmentPartition> {
    if s.rows() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut labels = Vec::with_capacity(s.rows());
    let mut used = vec![false; s.cols()];
    for (row, values) in s.iter_rows().enumerate() {
        let ones = values.iter().filter(|&&x| x == 1.0).count();
        let binary = values.iter().all(|&x| x == 0.0 || x == 1.0);
        if ones != 1 || !binary {
            return Err(Error::NotHardPartition { row, ones });
        }
        let col = values.iter().position(|&x| x == 1.0).unwrap_or_default();
        used[col] = true;
        labels.push(col);
    }
    let dropped_empty_groups = (0..s.cols()).filter(|&c| !used[c]).collect();
    Ok(AssignmentPartition {
        partition: Partition::from_labels(&labels)?,
        dropped_empty_groups,
    })
}
