//! Brute-force reference implementations and random instance generators.
#![allow(dead_code)]

use poolq_core::{Graph, Partition};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A coloured graph with a partition, as plain vectors.
#[derive(Debug, Clone)]
pub struct Instance {
    pub zeta: Vec<usize>,
    pub labels: Vec<usize>,
    pub partition: Partition,
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_colours: usize,
    max_k: usize,
) -> Instance {
    let n = rng.random_range(1..=max_n);
    let colours = rng.random_range(1..=max_colours);
    let k = rng.random_range(1..=max_k.min(n));
    let zeta: Vec<usize> = (0..n).map(|_| rng.random_range(0..colours)).collect();
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    let partition = Partition::from_labels(&labels).unwrap();
    Instance {
        zeta,
        labels,
        partition,
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Nodes of each group, found by scanning the membership vector.
pub fn groups_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut ids: Vec<usize> = labels.to_vec();
    ids.sort_unstable();
    ids.dedup();
    ids.iter()
        .map(|&g| (0..labels.len()).filter(|&v| labels[v] == g).collect())
        .collect()
}

fn colour_set(zeta: &[usize], nodes: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = nodes.iter().map(|&v| zeta[v]).collect();
    s.sort_unstable();
    s.dedup();
    s
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Fraction of colours whose nodes all carry one label.
pub fn gamma_oracle(zeta: &[usize], labels: &[usize]) -> f64 {
    let colours = colour_set(zeta, &(0..zeta.len()).collect::<Vec<_>>());
    let valid = colours
        .iter()
        .filter(|&&c| {
            let owners: Vec<usize> = (0..zeta.len())
                .filter(|&v| zeta[v] == c)
                .map(|v| labels[v])
                .collect();
            owners.iter().all(|&g| g == owners[0])
        })
        .count();
    valid as f64 / colours.len() as f64
}

/// Largest number of unseen groups satisfied by a single map from unseen
/// groups to seen groups, found by enumerating every map.
pub fn best_map(zs: &[usize], ls: &[usize], zu: &[usize], lu: &[usize]) -> (usize, usize) {
    let seen: Vec<Vec<usize>> = groups_of(ls).iter().map(|g| colour_set(zs, g)).collect();
    let unseen: Vec<Vec<usize>> = groups_of(lu).iter().map(|g| colour_set(zu, g)).collect();
    let (ks, ku) = (seen.len(), unseen.len());
    let total = ks.pow(ku as u32);
    let mut best = 0;
    for code in 0..total {
        let mut c = code;
        let mut hits = 0;
        for group in &unseen {
            let target = c % ks;
            c /= ks;
            if subset(group, &seen[target]) {
                hits += 1;
            }
        }
        best = best.max(hits);
    }
    (best, ku)
}

pub fn lambda_full_oracle(zs: &[usize], ls: &[usize], zu: &[usize], lu: &[usize]) -> f64 {
    let (best, ku) = best_map(zs, ls, zu, lu);
    if best == ku {
        1.0
    } else {
        0.0
    }
}

pub fn lambda_ratio_oracle(zs: &[usize], ls: &[usize], zu: &[usize], lu: &[usize]) -> f64 {
    let (best, ku) = best_map(zs, ls, zu, lu);
    best as f64 / ku as f64
}

/// Unseen groups (over all unseen graphs) contained in any group of any seen
/// graph, as a fraction of all unseen groups.
pub fn lambda_group_oracle(seen: &[&Instance], unseen: &[&Instance]) -> f64 {
    let mut hits = 0;
    let mut total = 0;
    for u in unseen {
        for g in groups_of(&u.labels) {
            total += 1;
            let want = colour_set(&u.zeta, &g);
            let found = seen.iter().any(|s| {
                groups_of(&s.labels)
                    .iter()
                    .any(|h| subset(&want, &colour_set(&s.zeta, h)))
            });
            if found {
                hits += 1;
            }
        }
    }
    hits as f64 / total as f64
}

/// Normalised mutual information with the geometric-mean normaliser, from
/// explicit joint probabilities.
pub fn nmi_oracle(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let ga = groups_of(a);
    let gb = groups_of(b);
    let h = |groups: &[Vec<usize>]| -> f64 {
        groups
            .iter()
            .map(|g| {
                let p = g.len() as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let (ha, hb) = (h(&ga), h(&gb));
    if ha == 0.0 || hb == 0.0 {
        return if ha == 0.0 && hb == 0.0 { 1.0 } else { 0.0 };
    }
    let mut mi = 0.0;
    for x in &ga {
        for y in &gb {
            let joint = x.iter().filter(|v| y.contains(v)).count() as f64 / n;
            if joint > 0.0 {
                let px = x.len() as f64 / n;
                let py = y.len() as f64 / n;
                mi += joint * (joint / (px * py)).ln();
            }
        }
    }
    mi / (ha * hb).sqrt()
}

fn ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut r = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &o in &order[i..=j] {
            r[o] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Same equivalence relation on nodes.
pub fn same_classes(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

/// Minimum normalised cut over all bipartitions, by enumeration.
pub fn min_ncut_bipartition(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let a = g.adjacency();
    let deg: Vec<f64> = (0..n).map(|i| a.row(i).iter().sum()).collect();
    let mut best = (f64::INFINITY, vec![0; n]);
    for mask in 1u64..(1 << (n - 1)) {
        let side: Vec<usize> = (0..n).map(|v| ((mask >> v) & 1) as usize).collect();
        let mut cut = 0.0;
        let mut vol = [0.0, 0.0];
        for u in 0..n {
            vol[side[u]] += deg[u];
            for v in 0..n {
                if side[u] == 0 && side[v] == 1 {
                    cut += a[(u, v)];
                }
            }
        }
        if vol[0] == 0.0 || vol[1] == 0.0 {
            continue;
        }
        let ncut = cut / vol[0] + cut / vol[1];
        if ncut < best.0 {
            best = (ncut, side);
        }
    }
    best.1
}
