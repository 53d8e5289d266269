//! Workloads shared by the criterion benches.

use std::path::PathBuf;

use poolq_core::{load_tudataset, random_labels, DatasetBundle, Graph, Partition};

/// Random colours from `0..colours` and a random partition into `k` groups.
pub fn coloured_graph(n: usize, colours: usize, k: usize, seed: u64) -> (Vec<usize>, Partition) {
    let zeta = random_labels(n, colours.min(n), seed).expect("colour count within 1..=n");
    let labels =
        random_labels(n, k.min(n), seed.wrapping_add(1)).expect("group count within 1..=n");
    let p = Partition::from_labels(&labels).expect("nonempty labels");
    (zeta, p)
}

/// A cycle of `cliques` cliques of size `size`, neighbouring cliques joined
/// by one edge.
pub fn ring_of_cliques(cliques: usize, size: usize) -> Graph {
    let mut edges = Vec::new();
    for c in 0..cliques {
        let base = c * size;
        for u in 0..size {
            for v in u + 1..size {
                edges.push((base + u, base + v));
            }
        }
        edges.push((base, ((c + 1) % cliques) * size + size - 1));
    }
    Graph::new(cliques * size, edges).expect("edges in range")
}

/// The MUTAG copy shipped in `data/`, if present.
pub fn mutag() -> Option<DatasetBundle> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/MUTAG");
    load_tudataset(dir, "MUTAG").ok()
}
