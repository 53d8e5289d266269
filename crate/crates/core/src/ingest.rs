//! TUDataset text-format reader and seen/unseen splitting.
//!
//! Files (1-based ids, comma or whitespace separated):
//! `<name>_A.txt` directed edge pairs, `<name>_graph_indicator.txt` one graph
//! id per node, and optionally `<name>_node_labels.txt`,
//! `<name>_node_attributes.txt`, `<name>_graph_labels.txt`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize_colouring, Colouring, Graph};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetBundle {
    pub name: String,
    pub graphs: Vec<Graph>,
    pub graph_labels: Option<Vec<i64>>,
    /// Raw discrete node labels per graph, when the dataset has them.
    pub node_labels: Option<Vec<Vec<i64>>>,
    /// Whether `graphs[i].features()` came from `_node_attributes.txt`
    /// (true) or from one-hot node labels (false).
    pub features_from_attributes: bool,
}

impl DatasetBundle {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn total_nodes(&self) -> usize {
        self.graphs.iter().map(Graph::n).sum()
    }

    pub fn node_label_colouring(&self, graph: usize) -> Option<Colouring> {
        let labels = self.node_labels.as_ref()?;
        canonicalize_colouring(&labels[graph]).ok()
    }
}

fn dataset_file(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let text = fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFile(path.to_path_buf())
        } else {
            Error::Io {
                path: path.to_path_buf(),
                source,
            }
        }
    })?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.to_string()))
        .collect())
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

fn parse_ints(path: &Path, lineno: usize, line: &str) -> Result<Vec<i64>> {
    tokens(line)
        .map(|t| {
            t.parse::<i64>().map_err(|_| Error::Parse {
                file: path.to_path_buf(),
                line: lineno,
                msg: format!("expected an integer, found {t:?}"),
            })
        })
        .collect()
}

fn parse_floats(path: &Path, lineno: usize, line: &str) -> Result<Vec<f64>> {
    tokens(line)
        .map(|t| {
            t.parse::<f64>().map_err(|_| Error::Parse {
                file: path.to_path_buf(),
                line: lineno,
                msg: format!("expected a real number, found {t:?}"),
            })
        })
        .collect()
}

fn parse_column(path: &Path) -> Result<Vec<(usize, i64)>> {
    read_lines(path)?
        .into_iter()
        .map(|(lineno, line)| {
            let vals = parse_ints(path, lineno, &line)?;
            match vals.as_slice() {
                [v] => Ok((lineno, *v)),
                _ => Err(Error::Parse {
                    file: path.to_path_buf(),
                    line: lineno,
                    msg: format!("expected one integer, found {}", vals.len()),
                }),
            }
        })
        .collect()
}

fn optional<T>(res: Result<T>) -> Result<Option<T>> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(Error::MissingFile(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Load `<dir>/<name>_*.txt` into a bundle of graphs.
pub fn load_tudataset(dir: impl AsRef<Path>, name: &str) -> Result<DatasetBundle> {
    let dir = dir.as_ref();
    let indicator_path = dataset_file(dir, name, "graph_indicator");
    let a_path = dataset_file(dir, name, "A");

    let indicator = parse_column(&indicator_path)?;
    let mut graph_of = Vec::with_capacity(indicator.len());
    for &(lineno, g) in &indicator {
        if g < 1 {
            return Err(Error::Parse {
                file: indicator_path.clone(),
                line: lineno,
                msg: format!("graph ids are 1-based, found {g}"),
            });
        }
        graph_of.push(g as usize - 1);
    }
    let num_graphs = graph_of.iter().max().map_or(0, |&g| g + 1);
    let mut local = vec![0usize; graph_of.len()];
    let mut sizes = vec![0usize; num_graphs];
    for (v, &g) in graph_of.iter().enumerate() {
        local[v] = sizes[g];
        sizes[g] += 1;
    }
    if let Some(g) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::Parse {
            file: indicator_path,
            line: 0,
            msg: format!("graph id {} has no nodes", g + 1),
        });
    }

    // Count directed occurrences; an undirected pair gets multiplicity
    // max(#(u,v), #(v,u)) so the symmetric duplicate collapses but genuine
    // repeats stay multiedges.
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    let mut first_seen: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in read_lines(&a_path)? {
        let vals = parse_ints(&a_path, lineno, &line)?;
        let [u, v] = vals.as_slice() else {
            return Err(Error::Parse {
                file: a_path.clone(),
                line: lineno,
                msg: format!("expected two node ids, found {}", vals.len()),
            });
        };
        let check = |x: i64| -> Result<usize> {
            if x < 1 || x as usize > graph_of.len() {
                Err(Error::Parse {
                    file: a_path.clone(),
                    line: lineno,
                    msg: format!("node id {x} out of range 1..={}", graph_of.len()),
                })
            } else {
                Ok(x as usize - 1)
            }
        };
        let (u, v) = (check(*u)?, check(*v)?);
        if graph_of[u] != graph_of[v] {
            return Err(Error::CrossGraphEdge {
                file: a_path.clone(),
                line: lineno,
                u: u + 1,
                v: v + 1,
                gu: graph_of[u] + 1,
                gv: graph_of[v] + 1,
            });
        }
        let key = (u.min(v), u.max(v));
        if !directed.contains_key(&(u, v)) && !directed.contains_key(&(v, u)) {
            first_seen.push(key);
        }
        *directed.entry((u, v)).or_default() += 1;
    }
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_graphs];
    for (u, v) in first_seen {
        let forward = directed.get(&(u, v)).copied().unwrap_or(0);
        let backward = directed.get(&(v, u)).copied().unwrap_or(0);
        let mult = if u == v {
            forward
        } else {
            forward.max(backward)
        };
        for _ in 0..mult {
            edges[graph_of[u]].push((local[u], local[v]));
        }
    }

    let node_labels = optional(parse_column(&dataset_file(dir, name, "node_labels")))?;
    if let Some(labels) = &node_labels {
        if labels.len() != graph_of.len() {
            return Err(Error::SizeMismatch {
                what: "node label rows",
                expected: graph_of.len(),
                found: labels.len(),
            });
        }
    }
    let attributes = optional(read_lines(&dataset_file(dir, name, "node_attributes")))?;
    let graph_labels = optional(parse_column(&dataset_file(dir, name, "graph_labels")))?
        .map(|rows| rows.into_iter().map(|(_, v)| v).collect::<Vec<_>>());

    let mut per_graph_rows: Vec<Vec<Vec<f64>>> = vec![Vec::new(); num_graphs];
    let features_from_attributes = attributes.is_some();
    if let Some(lines) = attributes {
        let path = dataset_file(dir, name, "node_attributes");
        if lines.len() != graph_of.len() {
            return Err(Error::SizeMismatch {
                what: "node attribute rows",
                expected: graph_of.len(),
                found: lines.len(),
            });
        }
        for (v, (lineno, line)) in lines.iter().enumerate() {
            per_graph_rows[graph_of[v]].push(parse_floats(&path, *lineno, line)?);
        }
    } else if let Some(labels) = &node_labels {
        let mut alphabet: Vec<i64> = labels.iter().map(|&(_, l)| l).collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        for (v, &(_, l)) in labels.iter().enumerate() {
            let mut row = vec![0.0; alphabet.len()];
            row[alphabet.binary_search(&l).unwrap_or_default()] = 1.0;
            per_graph_rows[graph_of[v]].push(row);
        }
    }

    let mut graphs = Vec::with_capacity(num_graphs);
    for (g, edge_list) in edges.into_iter().enumerate() {
        let mut graph = Graph::new(sizes[g], edge_list)?;
        if !per_graph_rows[g].is_empty() {
            graph = graph.with_features(Matrix::from_rows(&per_graph_rows[g])?)?;
        }
        graphs.push(graph);
    }

    let node_labels = node_labels.map(|labels| {
        let mut out = vec![Vec::new(); num_graphs];
        for (v, (_, l)) in labels.into_iter().enumerate() {
            out[graph_of[v]].push(l);
        }
        out
    });

    Ok(DatasetBundle {
        name: name.to_string(),
        graphs,
        graph_labels,
        node_labels,
        features_from_attributes,
    })
}

/// Seen / unseen graph indices, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub seen: Vec<usize>,
    pub unseen: Vec<usize>,
}

/// Deterministic shuffled split of `num_graphs` graph indices.
pub fn split_indices(num_graphs: usize, fraction: f64, seed: u64) -> Result<DatasetSplit> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "split fraction must lie in (0, 1), got {fraction}"
        )));
    }
    if num_graphs < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 graphs to split, got {num_graphs}"
        )));
    }
    let num_seen = (fraction * num_graphs as f64).round() as usize;
    if num_seen == 0 {
        return Err(Error::EmptySplit("seen"));
    }
    if num_seen >= num_graphs {
        return Err(Error::EmptySplit("unseen"));
    }
    let mut order: Vec<usize> = (0..num_graphs).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut seen = order[..num_seen].to_vec();
    let mut unseen = order[num_seen..].to_vec();
    seen.sort_unstable();
    unseen.sort_unstable();
    Ok(DatasetSplit { seen, unseen })
}

pub fn split_seen_unseen(bundle: &DatasetBundle, fraction: f64, seed: u64) -> Result<DatasetSplit> {
    split_indices(bundle.len(), fraction, seed)
}
