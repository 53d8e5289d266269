//! 1-dimensional Weisfeiler-Leman colour refinement.
//!
//! Each round maps a node to a new colour determined by its current colour and
//! the sorted multiset of its neighbours' colours. Labels come from an exact
//! `(colour, neighbour multiset)` table, so there are no hash collisions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize_colouring, Colouring, Graph};

/// Number of refinement rounds; `Stable` iterates to the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Rounds {
    Finite(usize),
    Stable,
}

impl fmt::Display for Rounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rounds::Finite(r) => write!(f, "{r}"),
            Rounds::Stable => f.write_str("inf"),
        }
    }
}

impl FromStr for Rounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "stable" => Ok(Rounds::Stable),
            other => other
                .parse()
                .map(Rounds::Finite)
                .map_err(|_| Error::InvalidArgument(format!("bad round count {other:?}"))),
        }
    }
}

impl From<Rounds> for String {
    fn from(r: Rounds) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Rounds {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

type Table = HashMap<(usize, Vec<usize>), usize>;

fn step(g: &Graph, colours: &[usize], table: &mut Table) -> Vec<usize> {
    g.neighbours()
        .iter()
        .zip(colours)
        .map(|(nbrs, &own)| {
            let mut multiset: Vec<usize> = nbrs.iter().map(|&v| colours[v]).collect();
            multiset.sort_unstable();
            let next = table.len();
            *table.entry((own, multiset)).or_insert(next)
        })
        .collect()
}

fn check_len(g: &Graph, init: &[usize]) -> Result<()> {
    if init.len() != g.n() {
        return Err(Error::SizeMismatch {
            what: "initial colouring length",
            expected: g.n(),
            found: init.len(),
        });
    }
    Ok(())
}

/// Refine `init` on `g` for the given number of rounds.
pub fn refine_colours(g: &Graph, init: &Colouring, rounds: Rounds) -> Result<Colouring> {
    check_len(g, init)?;
    let mut current = canonicalize_colouring(init.as_slice())?;
    let limit = match rounds {
        Rounds::Finite(r) => r,
        Rounds::Stable => g.n(),
    };
    for _ in 0..limit {
        let mut table = Table::new();
        let next = canonicalize_colouring(&step(g, &current, &mut table))?;
        let stable = next.num_colours() == current.num_colours();
        current = next;
        if stable && rounds == Rounds::Stable {
            break;
        }
    }
    Ok(current)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Colourings after 0..=max_r rounds.
    pub colourings: Vec<Colouring>,
    /// Stable colouring.
    pub fixed_point: Colouring,
    /// First round r whose colour partition equals that of round r + 1.
    pub stable_round: usize,
}

pub fn refinement_trajectory(g: &Graph, init: &Colouring, max_r: usize) -> Result<Trajectory> {
    check_len(g, init)?;
    let mut colourings = vec![canonicalize_colouring(init.as_slice())?];
    let mut stable_round = None;
    let mut r = 0;
    // Run until both max_r rounds are recorded and the fixed point is found.
    while r < max_r || stable_round.is_none() {
        let current = colourings.last().cloned().unwrap_or_else(|| unreachable!());
        let next = canonicalize_colouring(&step(g, &current, &mut Table::new()))?;
        if stable_round.is_none() && next.num_colours() == current.num_colours() {
            stable_round = Some(r);
        }
        colourings.push(next);
        r += 1;
    }
    let stable_round = stable_round.unwrap_or_default();
    let fixed_point = colourings[stable_round].clone();
    colourings.truncate(max_r + 1);
    Ok(Trajectory {
        colourings,
        fixed_point,
        stable_round,
    })
}

/// Refine many graphs against one shared label table per round, so equal
/// colour ids mean the same thing in every graph.
///
/// `init` holds colour ids from a shared alphabet; they are returned untouched
/// for zero rounds. With `Rounds::Stable`, iteration stops once the colour
/// partition of the disjoint union of all graphs stops changing.
pub fn refine_joint(
    graphs: &[&Graph],
    init: &[Vec<usize>],
    rounds: Rounds,
) -> Result<Vec<Vec<usize>>> {
    if graphs.len() != init.len() {
        return Err(Error::SizeMismatch {
            what: "number of initial colourings",
            expected: graphs.len(),
            found: init.len(),
        });
    }
    for (g, c) in graphs.iter().zip(init) {
        check_len(g, c)?;
    }
    let total: usize = graphs.iter().map(|g| g.n()).sum();
    let limit = match rounds {
        Rounds::Finite(r) => r,
        Rounds::Stable => total,
    };
    let count = |cs: &[Vec<usize>]| {
        let mut all: Vec<usize> = cs.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut current = init.to_vec();
    let mut current_count = count(&current);
    for _ in 0..limit {
        let mut table = Table::new();
        let next: Vec<Vec<usize>> = graphs
            .iter()
            .zip(&current)
            .map(|(g, c)| step(g, c, &mut table))
            .collect();
        let next_count = table.len();
        let stable = next_count == current_count;
        current = next;
        current_count = next_count;
        if stable && rounds == Rounds::Stable {
            break;
        }
    }
    Ok(current)
}
