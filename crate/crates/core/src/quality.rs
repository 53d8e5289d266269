//! Validity, transferability and combined quality of a colouring with respect
//! to a reference partition.
//!
//! A colour is *valid* when all nodes carrying it lie in one group; validity
//! `Γ` is the fraction of valid colours among those present. An unseen group
//! *matches* a seen group when its colour set is a subset of the seen group's
//! colour set; transferability `Λ` summarises matches between seen and unseen
//! graphs in one of three ways ([`TransferVariant`]). Combined quality is
//! `Q = min(Γ, Λ)`.
//!
//! Colourings are plain `&[usize]` so colour ids can come from an alphabet
//! shared across graphs; only equality of ids matters.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::ingest::DatasetSplit;
use crate::refine::{refine_joint, Rounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferVariant {
    /// 1 iff every unseen group matches some seen group.
    #[default]
    Full,
    /// Fraction of unseen groups that match.
    Ratio,
    /// Unseen groups matched anywhere in the seen set, counted over groups.
    Group,
}

impl fmt::Display for TransferVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransferVariant::Full => "full",
            TransferVariant::Ratio => "ratio",
            TransferVariant::Group => "group",
        })
    }
}

impl FromStr for TransferVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(TransferVariant::Full),
            "ratio" => Ok(TransferVariant::Ratio),
            "group" => Ok(TransferVariant::Group),
            other => Err(Error::InvalidArgument(format!(
                "unknown transfer variant {other:?}"
            ))),
        }
    }
}

/// Elementary operation counts, used to check the linear-time contracts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounter {
    pub node_visits: u64,
    pub insertions: u64,
    pub membership_tests: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.node_visits + self.insertions + self.membership_tests
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validity {
    pub value: f64,
    /// Colours spanning more than one group, ascending.
    pub invalid: Vec<usize>,
    pub num_colours: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transfer {
    pub value: f64,
    /// Unseen group indices found without a matching seen group.
    pub unmatched: Vec<usize>,
}

/// Reference to a group of one graph in a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupRef {
    pub graph: usize,
    pub group: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub gamma: f64,
    pub lambda: f64,
    pub q: f64,
    pub variant: TransferVariant,
    pub invalid_colours: Vec<usize>,
    pub unmatched_groups: Vec<GroupRef>,
}

fn check_sizes(zeta: &[usize], p: &Partition) -> Result<()> {
    if zeta.len() != p.n() {
        return Err(Error::SizeMismatch {
            what: "colouring length vs partition size",
            expected: p.n(),
            found: zeta.len(),
        });
    }
    if zeta.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
enum Owner {
    Group(usize),
    Invalid,
}

/// Fraction of valid colours among the colours present.
pub fn gamma(zeta: &[usize], p: &Partition) -> Result<Validity> {
    gamma_metered(zeta, p, &mut OpCounter::default())
}

/// [`gamma`] with operation counting; one table lookup per node.
pub fn gamma_metered(zeta: &[usize], p: &Partition, meter: &mut OpCounter) -> Result<Validity> {
    check_sizes(zeta, p)?;
    let start = *meter;
    let mut owner: HashMap<usize, Owner> = HashMap::new();
    let mut invalid = Vec::new();
    for (v, &c) in zeta.iter().enumerate() {
        meter.node_visits += 1;
        let g = p.group_of(v);
        match owner.get(&c).copied() {
            None => {
                meter.insertions += 1;
                owner.insert(c, Owner::Group(g));
            }
            Some(Owner::Group(h)) if h != g => {
                owner.insert(c, Owner::Invalid);
                invalid.push(c);
            }
            Some(_) => {}
        }
    }
    debug_assert!(meter.node_visits - start.node_visits == zeta.len() as u64);
    debug_assert!(meter.insertions - start.insertions <= zeta.len() as u64);
    invalid.sort_unstable();
    let num_colours = owner.len();
    Ok(Validity {
        value: (num_colours - invalid.len()) as f64 / num_colours as f64,
        invalid,
        num_colours,
    })
}

/// Per-group colour sets of a seen graph, built once and reused.
#[derive(Debug, Clone)]
pub struct SeenGroups {
    sets: Vec<HashSet<usize>>,
}

impl SeenGroups {
    pub fn new(zeta: &[usize], p: &Partition) -> Result<Self> {
        Self::new_metered(zeta, p, &mut OpCounter::default())
    }

    pub fn new_metered(zeta: &[usize], p: &Partition, meter: &mut OpCounter) -> Result<Self> {
        check_sizes(zeta, p)?;
        let mut sets = vec![HashSet::new(); p.k()];
        for (v, &c) in zeta.iter().enumerate() {
            meter.insertions += 1;
            sets[p.group_of(v)].insert(c);
        }
        Ok(Self { sets })
    }

    pub fn num_groups(&self) -> usize {
        self.sets.len()
    }

    /// Whether the colours of `nodes` under `zeta` all lie in one seen group.
    pub fn matches(&self, zeta: &[usize], nodes: &[usize], meter: &mut OpCounter) -> bool {
        self.sets.iter().any(|set| {
            nodes.iter().all(|&v| {
                meter.membership_tests += 1;
                set.contains(&zeta[v])
            })
        })
    }
}

fn matched_groups(
    seen: &SeenGroups,
    zeta_u: &[usize],
    p_u: &Partition,
    early_exit: bool,
    meter: &mut OpCounter,
) -> Vec<bool> {
    let mut out = Vec::with_capacity(p_u.k());
    for group in p_u.groups() {
        let ok = seen.matches(zeta_u, group, meter);
        out.push(ok);
        if !ok && early_exit {
            break;
        }
    }
    out
}

/// 1 iff every unseen group's colour set lies inside some seen group's colour
/// set. Stops at the first unmatched group, which is reported.
pub fn lambda_full(
    zeta_s: &[usize],
    p_s: &Partition,
    zeta_u: &[usize],
    p_u: &Partition,
) -> Result<Transfer> {
    lambda_full_metered(zeta_s, p_s, zeta_u, p_u, &mut OpCounter::default())
}

pub fn lambda_full_metered(
    zeta_s: &[usize],
    p_s: &Partition,
    zeta_u: &[usize],
    p_u: &Partition,
    meter: &mut OpCounter,
) -> Result<Transfer> {
    check_sizes(zeta_u, p_u)?;
    let start = *meter;
    let seen = SeenGroups::new_metered(zeta_s, p_s, meter)?;
    let flags = matched_groups(&seen, zeta_u, p_u, true, meter);
    let used =
        meter.insertions - start.insertions + meter.membership_tests - start.membership_tests;
    debug_assert!(used <= (zeta_u.len() * p_s.k() + zeta_s.len()) as u64);
    let unmatched: Vec<usize> = flags
        .iter()
        .enumerate()
        .filter(|(_, &ok)| !ok)
        .map(|(i, _)| i)
        .collect();
    Ok(Transfer {
        value: if unmatched.is_empty() { 1.0 } else { 0.0 },
        unmatched,
    })
}

/// Fraction of unseen groups matched by some seen group.
pub fn lambda_ratio(
    zeta_s: &[usize],
    p_s: &Partition,
    zeta_u: &[usize],
    p_u: &Partition,
) -> Result<Transfer> {
    check_sizes(zeta_u, p_u)?;
    let seen = SeenGroups::new(zeta_s, p_s)?;
    let flags = matched_groups(&seen, zeta_u, p_u, false, &mut OpCounter::default());
    let unmatched: Vec<usize> = flags
        .iter()
        .enumerate()
        .filter(|(_, &ok)| !ok)
        .map(|(i, _)| i)
        .collect();
    Ok(Transfer {
        value: (p_u.k() - unmatched.len()) as f64 / p_u.k() as f64,
        unmatched,
    })
}

/// Whether `nodes` of an unseen graph coloured by `zeta_u` match any group of
/// any seen graph.
pub fn lambda_group(
    seen: &[(&[usize], &Partition)],
    zeta_u: &[usize],
    nodes: &[usize],
) -> Result<bool> {
    if let Some(&v) = nodes.iter().find(|&&v| v >= zeta_u.len()) {
        return Err(Error::InvalidArgument(format!(
            "group node {v} out of range"
        )));
    }
    let mut meter = OpCounter::default();
    for (zeta_s, p_s) in seen {
        if SeenGroups::new(zeta_s, p_s)?.matches(zeta_u, nodes, &mut meter) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Quality of one seen/unseen pair. `Γ` is the mean of the two per-graph
/// validities; for a single seen graph `Group` coincides with `Ratio`.
pub fn q_single(
    zeta_s: &[usize],
    p_s: &Partition,
    zeta_u: &[usize],
    p_u: &Partition,
    variant: TransferVariant,
) -> Result<QualityReport> {
    let gs = gamma(zeta_s, p_s)?;
    let gu = gamma(zeta_u, p_u)?;
    let ratio = lambda_ratio(zeta_s, p_s, zeta_u, p_u)?;
    let lambda = match variant {
        TransferVariant::Full => lambda_full(zeta_s, p_s, zeta_u, p_u)?.value,
        TransferVariant::Ratio | TransferVariant::Group => ratio.value,
    };
    let gamma = 0.5 * (gs.value + gu.value);
    let mut invalid_colours: Vec<usize> = gs.invalid.into_iter().chain(gu.invalid).collect();
    invalid_colours.sort_unstable();
    invalid_colours.dedup();
    Ok(QualityReport {
        gamma,
        lambda,
        q: gamma.min(lambda),
        variant,
        invalid_colours,
        unmatched_groups: ratio
            .unmatched
            .into_iter()
            .map(|group| GroupRef { graph: 0, group })
            .collect(),
    })
}

/// A graph's colouring paired with its reference partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColouredGraph {
    pub colours: Vec<usize>,
    pub partition: Partition,
}

impl ColouredGraph {
    pub fn new(colours: Vec<usize>, partition: Partition) -> Result<Self> {
        check_sizes(&colours, &partition)?;
        Ok(Self { colours, partition })
    }
}

/// Mean per-graph validity.
pub fn gamma_bar(graphs: &[ColouredGraph]) -> Result<f64> {
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("no graphs to score".into()));
    }
    let values = graphs
        .par_iter()
        .map(|g| gamma(&g.colours, &g.partition).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

fn check_split(num_graphs: usize, split: &DatasetSplit) -> Result<()> {
    if split.seen.is_empty() {
        return Err(Error::EmptySplit("seen"));
    }
    if split.unseen.is_empty() {
        return Err(Error::EmptySplit("unseen"));
    }
    if let Some(&i) = split
        .seen
        .iter()
        .chain(&split.unseen)
        .find(|&&i| i >= num_graphs)
    {
        return Err(Error::InvalidArgument(format!(
            "split refers to graph {i} but only {num_graphs} graphs were given"
        )));
    }
    Ok(())
}

fn seen_index(graphs: &[ColouredGraph], split: &DatasetSplit) -> Result<Vec<SeenGroups>> {
    split
        .seen
        .par_iter()
        .map(|&i| SeenGroups::new(&graphs[i].colours, &graphs[i].partition))
        .collect()
}

/// Per unseen graph: (score contribution, number of groups counted).
fn unseen_scores(seen: &[SeenGroups], u: &ColouredGraph, variant: TransferVariant) -> (f64, usize) {
    let mut meter = OpCounter::default();
    match variant {
        TransferVariant::Full => {
            let hit = seen.iter().any(|s| {
                matched_groups(s, &u.colours, &u.partition, true, &mut meter)
                    .iter()
                    .all(|&ok| ok)
            });
            (if hit { 1.0 } else { 0.0 }, 1)
        }
        TransferVariant::Ratio => {
            let k = u.partition.k();
            let mut best = 0usize;
            for s in seen {
                let hits = matched_groups(s, &u.colours, &u.partition, false, &mut meter)
                    .iter()
                    .filter(|&&ok| ok)
                    .count();
                best = best.max(hits);
                if best == k {
                    break;
                }
            }
            (best as f64 / k as f64, 1)
        }
        TransferVariant::Group => {
            let hits = u
                .partition
                .groups()
                .iter()
                .filter(|g| seen.iter().any(|s| s.matches(&u.colours, g, &mut meter)))
                .count();
            (hits as f64, u.partition.k())
        }
    }
}

/// Dataset transferability of the unseen graphs given the seen ones.
pub fn lambda_bar(
    graphs: &[ColouredGraph],
    split: &DatasetSplit,
    variant: TransferVariant,
) -> Result<f64> {
    check_split(graphs.len(), split)?;
    let seen = seen_index(graphs, split)?;
    let scores: Vec<(f64, usize)> = split
        .unseen
        .par_iter()
        .map(|&i| unseen_scores(&seen, &graphs[i], variant))
        .collect();
    let total: f64 = scores.iter().map(|s| s.0).sum();
    let count: usize = scores.iter().map(|s| s.1).sum();
    Ok(total / count as f64)
}

/// `min(Γ̄, Λ̄)`, with `Γ̄` over seen and unseen graphs together. Diagnostics
/// list invalid colours of every graph and unseen groups matched nowhere.
pub fn q_bar(
    graphs: &[ColouredGraph],
    split: &DatasetSplit,
    variant: TransferVariant,
) -> Result<QualityReport> {
    check_split(graphs.len(), split)?;
    let members: Vec<usize> = {
        let mut m: Vec<usize> = split.seen.iter().chain(&split.unseen).copied().collect();
        m.sort_unstable();
        m.dedup();
        m
    };
    let validities = members
        .par_iter()
        .map(|&i| gamma(&graphs[i].colours, &graphs[i].partition))
        .collect::<Result<Vec<_>>>()?;
    let gamma = validities.iter().map(|v| v.value).sum::<f64>() / validities.len() as f64;
    let lambda = lambda_bar(graphs, split, variant)?;

    let seen = seen_index(graphs, split)?;
    let unmatched_groups: Vec<GroupRef> = split
        .unseen
        .par_iter()
        .flat_map_iter(|&i| {
            let u = &graphs[i];
            let mut meter = OpCounter::default();
            u.partition
                .groups()
                .iter()
                .enumerate()
                .filter(|(_, g)| !seen.iter().any(|s| s.matches(&u.colours, g, &mut meter)))
                .map(|(group, _)| GroupRef { graph: i, group })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut invalid_colours: Vec<usize> = validities.into_iter().flat_map(|v| v.invalid).collect();
    invalid_colours.sort_unstable();
    invalid_colours.dedup();
    Ok(QualityReport {
        gamma,
        lambda,
        q: gamma.min(lambda),
        variant,
        invalid_colours,
        unmatched_groups,
    })
}

/// Mean over graphs of distinct colours per node.
pub fn relative_colour_count(colourings: &[Vec<usize>]) -> f64 {
    let total: f64 = colourings
        .iter()
        .map(|c| {
            let mut d = c.clone();
            d.sort_unstable();
            d.dedup();
            d.len() as f64 / c.len() as f64
        })
        .sum();
    total / colourings.len() as f64
}

/// Refine shared-alphabet initial colours jointly for `cr` rounds and pair
/// them with the reference partitions.
pub fn coloured_dataset(
    graphs: &[Graph],
    partitions: &[Partition],
    init: &[Vec<usize>],
    cr: Rounds,
) -> Result<Vec<ColouredGraph>> {
    if partitions.len() != graphs.len() {
        return Err(Error::SizeMismatch {
            what: "reference partitions",
            expected: graphs.len(),
            found: partitions.len(),
        });
    }
    let refs: Vec<&Graph> = graphs.iter().collect();
    let refined = refine_joint(&refs, init, cr)?;
    refined
        .into_iter()
        .zip(partitions)
        .map(|(c, p)| ColouredGraph::new(c, p.clone()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub tau: f64,
    pub k_over_n: f64,
    pub gamma_bar: f64,
    pub lambda_bar: f64,
    pub q_bar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub tau_star: f64,
    pub q_star: f64,
    pub curve: Vec<SweepPoint>,
}

/// Evaluate `Q̄` at every threshold of `grid`. `colours_at(tau)` returns the
/// shared-alphabet colouring of every graph at that threshold. The best
/// threshold is the first one reaching the maximum.
#[allow(clippy::too_many_arguments)]
pub fn sweep_tau<F>(
    graphs: &[Graph],
    partitions: &[Partition],
    split: &DatasetSplit,
    cr: Rounds,
    grid: &[f64],
    variant: TransferVariant,
    colours_at: F,
) -> Result<Sweep>
where
    F: Fn(f64) -> Result<Vec<Vec<usize>>> + Sync,
{
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    check_split(graphs.len(), split)?;
    let curve = grid
        .par_iter()
        .map(|&tau| {
            let dataset = coloured_dataset(graphs, partitions, &colours_at(tau)?, cr)?;
            let colourings: Vec<Vec<usize>> = dataset.iter().map(|g| g.colours.clone()).collect();
            let members: Vec<ColouredGraph> = split
                .seen
                .iter()
                .chain(&split.unseen)
                .map(|&i| dataset[i].clone())
                .collect();
            let gamma_bar = gamma_bar(&members)?;
            let lambda_bar = lambda_bar(&dataset, split, variant)?;
            Ok(SweepPoint {
                tau,
                k_over_n: relative_colour_count(&colourings),
                gamma_bar,
                lambda_bar,
                q_bar: gamma_bar.min(lambda_bar),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = curve[0];
    for p in &curve[1..] {
        if p.q_bar > best.q_bar {
            best = *p;
        }
    }
    Ok(Sweep {
        tau_star: best.tau,
        q_star: best.q_bar,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn part(labels: &[usize]) -> Partition {
        Partition::from_labels(labels).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let p = part(&[0, 1]);
        assert_eq!(gamma(&[7, 7], &p).unwrap().value, 0.0);
        assert_eq!(gamma(&[0, 1], &p).unwrap().value, 1.0);
        let p = part(&[0, 0, 1, 1, 1]);
        let v = gamma(&[0, 1, 1, 2, 3], &p).unwrap();
        assert_eq!(v.value, 0.75);
        assert_eq!(v.invalid, vec![1]);
        assert_eq!(v.num_colours, 4);
    }

    #[test]
    fn gamma_ignores_colour_id_magnitude() {
        let p = part(&[0, 1, 1]);
        assert_eq!(gamma(&[1000, 5, 5], &p).unwrap().value, 1.0);
    }

    #[test]
    fn gamma_meter_is_linear() {
        let p = part(&[0, 1, 0, 1, 2, 2]);
        let mut m = OpCounter::default();
        gamma_metered(&[0, 0, 1, 1, 2, 3], &p, &mut m).unwrap();
        assert_eq!(m.node_visits, 6);
        assert_eq!(m.insertions, 4);
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(
            gamma(&[0, 1], &part(&[0])),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(lambda_full(&[0], &part(&[0]), &[0, 0], &part(&[0])).is_err());
    }

    #[test]
    fn constant_colouring_transfers() {
        let t = lambda_full(&[3, 3, 3], &part(&[0, 1, 1]), &[3, 3], &part(&[0, 1])).unwrap();
        assert_eq!(t.value, 1.0);
    }

    #[test]
    fn ratio_partial_credit() {
        // Unseen group 0 uses colours {0, 1}; group 1 uses {5}, never seen.
        let (zs, ps) = ([0, 1, 2], part(&[0, 0, 1]));
        let (zu, pu) = ([0, 1, 5], part(&[0, 0, 1]));
        assert_eq!(lambda_ratio(&zs, &ps, &zu, &pu).unwrap().value, 0.5);
        let full = lambda_full(&zs, &ps, &zu, &pu).unwrap();
        assert_eq!(full.value, 0.0);
        assert_eq!(full.unmatched, vec![1]);
    }

    #[test]
    fn group_variant_looks_across_seen_graphs() {
        let a = ([0usize, 1], part(&[0, 1]));
        let b = ([2usize, 3], part(&[0, 0]));
        let seen: Vec<(&[usize], &Partition)> = vec![(&a.0, &a.1), (&b.0, &b.1)];
        assert!(lambda_group(&seen, &[2, 3, 9], &[0, 1]).unwrap());
        assert!(!lambda_group(&seen, &[2, 3, 9], &[2]).unwrap());
        assert!(!lambda_group(&seen, &[0, 1], &[0, 1]).unwrap());
    }

    #[test]
    fn q_is_the_minimum() {
        let r = q_single(
            &[0, 0],
            &part(&[0, 1]),
            &[0, 0],
            &part(&[0, 1]),
            TransferVariant::Full,
        )
        .unwrap();
        assert_eq!((r.gamma, r.lambda, r.q), (0.0, 1.0, 0.0));
        assert_eq!(r.invalid_colours, vec![0]);
    }

    fn coloured(colours: &[usize], labels: &[usize]) -> ColouredGraph {
        ColouredGraph::new(colours.to_vec(), part(labels)).unwrap()
    }

    #[test]
    fn dataset_aggregates() {
        let graphs = vec![
            coloured(&[0, 1, 2], &[0, 0, 1]),
            coloured(&[0, 0], &[0, 1]),
            coloured(&[0, 1], &[0, 1]),
            coloured(&[7, 7], &[0, 0]),
        ];
        assert_eq!(gamma_bar(&graphs[..2]).unwrap(), 0.5);
        let split = DatasetSplit {
            seen: vec![0, 1],
            unseen: vec![2, 3],
        };
        assert_eq!(
            lambda_bar(&graphs, &split, TransferVariant::Full).unwrap(),
            0.5
        );
        assert_eq!(
            lambda_bar(&graphs, &split, TransferVariant::Ratio).unwrap(),
            0.5
        );
        assert_eq!(
            lambda_bar(&graphs, &split, TransferVariant::Group).unwrap(),
            2.0 / 3.0
        );
        let r = q_bar(&graphs, &split, TransferVariant::Full).unwrap();
        assert_eq!(r.gamma, 0.75);
        assert_eq!(r.q, 0.5);
        assert_eq!(r.unmatched_groups, vec![GroupRef { graph: 3, group: 0 }]);
    }

    #[test]
    fn empty_split_sides() {
        let graphs = vec![coloured(&[0], &[0])];
        let split = DatasetSplit {
            seen: vec![0],
            unseen: vec![],
        };
        assert!(matches!(
            lambda_bar(&graphs, &split, TransferVariant::Full),
            Err(Error::EmptySplit("unseen"))
        ));
        let split = DatasetSplit {
            seen: vec![],
            unseen: vec![0],
        };
        assert!(matches!(
            q_bar(&graphs, &split, TransferVariant::Full),
            Err(Error::EmptySplit("seen"))
        ));
    }

    #[test]
    fn gamma_is_the_chance_a_random_colour_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let labels: Vec<usize> = (0..40).map(|_| rng.random_range(0..4)).collect();
        let zeta: Vec<usize> = (0..40).map(|_| rng.random_range(0..12)).collect();
        let p = part(&labels);
        let v = gamma(&zeta, &p).unwrap();
        let mut present: Vec<usize> = zeta.clone();
        present.sort_unstable();
        present.dedup();
        let draws = 20_000;
        let hits = (0..draws)
            .filter(|_| {
                let c = present[rng.random_range(0..present.len())];
                !v.invalid.contains(&c)
            })
            .count();
        assert!((hits as f64 / draws as f64 - v.value).abs() < 0.02);
    }

    #[test]
    fn sweep_prefers_smallest_best_tau() {
        let graphs: Vec<Graph> = (0..4).map(|_| Graph::new(2, [(0, 1)]).unwrap()).collect();
        let parts: Vec<Partition> = (0..4).map(|_| part(&[0, 1])).collect();
        let split = DatasetSplit {
            seen: vec![0, 1, 2],
            unseen: vec![3],
        };
        let sweep = sweep_tau(
            &graphs,
            &parts,
            &split,
            Rounds::Finite(0),
            &[0.2, 0.5, 0.9],
            TransferVariant::Full,
            |tau| Ok(vec![if tau < 0.3 { vec![0, 0] } else { vec![0, 1] }; 4]),
        )
        .unwrap();
        assert_eq!(sweep.tau_star, 0.5);
        assert_eq!(sweep.q_star, 1.0);
        assert_eq!(sweep.curve[0].q_bar, 0.0);
        assert_eq!(sweep.curve[0].k_over_n, 0.5);
        let empty = sweep_tau(
            &graphs,
            &parts,
            &split,
            Rounds::Finite(0),
            &[],
            TransferVariant::Full,
            |_| Ok(vec![]),
        );
        assert!(matches!(empty, Err(Error::EmptyGrid)));
    }

    #[test]
    fn variant_parse() {
        assert_eq!(
            "ratio".parse::<TransferVariant>().unwrap(),
            TransferVariant::Ratio
        );
        assert!("x".parse::<TransferVariant>().is_err());
        assert_eq!(TransferVariant::default().to_string(), "full");
    }
}
