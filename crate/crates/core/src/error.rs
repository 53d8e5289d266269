use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("edge ({u}, {v}) out of range for a graph with {n} nodes")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },

    #[error("{what}: expected {expected}, found {found}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("not a hard partition: row {row} has {ones} ones")]
    NotHardPartition { row: usize, ones: usize },

    #[error("non-finite feature value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {diff:e}")]
    Asymmetric { i: usize, j: usize, diff: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph {graph} has no node features")]
    MissingFeatures { graph: usize },

    #[error("missing dataset file {0}")]
    MissingFile(PathBuf),

    #[error("{}:{line}: {msg}", file.display())]
    Parse {
        file: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{}:{line}: edge ({u}, {v}) connects graph {gu} and graph {gv}", file.display())]
    CrossGraphEdge {
        file: PathBuf,
        line: usize,
        u: usize,
        v: usize,
        gu: usize,
        gv: usize,
    },

    #[error("split would leave the {0} side empty")]
    EmptySplit(&'static str),

    #[error("empty tau grid")]
    EmptyGrid,

    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
