//! Constructive check of whether a one-layer select operator `σ(HW)` over a
//! one-hot colour matrix `H` can reproduce a target assignment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize_colouring, Colouring, Graph, Partition};
use crate::matrix::Matrix;
use crate::refine::refinement_trajectory;

/// A colour shared by two target groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub colour: usize,
    pub group_a: usize,
    pub group_b: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectOutcome {
    pub feasible: bool,
    /// `|C| x k` weights over canonical colour ids, when feasible.
    pub weights: Option<Matrix>,
    pub certificate: Option<Certificate>,
}

/// One-hot colour matrix `H` (`n x |C|`) of a canonical colouring.
pub fn colour_matrix(zeta: &Colouring) -> Matrix {
    let mut h = Matrix::zeros(zeta.len(), zeta.num_colours());
    for (v, &c) in zeta.iter().enumerate() {
        h[(v, c)] = 1.0;
    }
    h
}

/// Per-row argmax of `ReLU(HW)`, ties to the lowest group index.
pub fn apply_select(zeta: &Colouring, w: &Matrix) -> Result<Vec<usize>> {
    let hw = colour_matrix(zeta).matmul(w)?;
    Ok(hw
        .iter_rows()
        .map(|row| {
            let mut best = 0;
            for (g, &x) in row.iter().enumerate() {
                if x.max(0.0) > row[best].max(0.0) {
                    best = g;
                }
            }
            best
        })
        .collect())
}

pub fn construct_select(zeta: &Colouring, target: &Partition) -> Result<SelectOutcome> {
    if zeta.len() != target.n() {
        return Err(Error::SizeMismatch {
            what: "colouring length vs target size",
            expected: target.n(),
            found: zeta.len(),
        });
    }
    let zeta = canonicalize_colouring(zeta.as_slice())?;
    let mut owner = vec![usize::MAX; zeta.num_colours()];
    let mut certificate: Option<Certificate> = None;
    for (v, &c) in zeta.iter().enumerate() {
        let g = target.group_of(v);
        if owner[c] == usize::MAX {
            owner[c] = g;
        } else if owner[c] != g {
            let cand = Certificate {
                colour: c,
                group_a: owner[c].min(g),
                group_b: owner[c].max(g),
            };
            let better = certificate
                .is_none_or(|best| (cand.colour, cand.group_b) < (best.colour, best.group_b));
            if better {
                certificate = Some(cand);
            }
        }
    }
    if certificate.is_some() {
        return Ok(SelectOutcome {
            feasible: false,
            weights: None,
            certificate,
        });
    }
    let mut w = Matrix::zeros(zeta.num_colours(), target.k());
    for (c, &g) in owner.iter().enumerate() {
        w[(c, g)] = 1.0;
    }
    Ok(SelectOutcome {
        feasible: true,
        weights: Some(w),
        certificate: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RefinementFeasibility {
    /// Feasible after `rounds` refinement rounds and not before.
    Feasible { rounds: usize },
    /// The stable colouring, reached at `stable_round`, still spans groups.
    Never {
        stable_round: usize,
        certificate: Certificate,
    },
    /// Still infeasible after `max_rounds`, with the stable colouring later.
    NotWithin { max_rounds: usize },
}

/// Smallest number of refinement rounds after which `construct_select`
/// becomes feasible.
pub fn feasible_after_refinement(
    g: &Graph,
    zeta: &Colouring,
    target: &Partition,
    max_rounds: usize,
) -> Result<RefinementFeasibility> {
    let traj = refinement_trajectory(g, zeta, max_rounds)?;
    for (r, c) in traj
        .colourings
        .iter()
        .enumerate()
        .take(traj.stable_round + 1)
    {
        if construct_select(c, target)?.feasible {
            return Ok(RefinementFeasibility::Feasible { rounds: r });
        }
    }
    match construct_select(&traj.fixed_point, target)?.certificate {
        Some(certificate) => Ok(RefinementFeasibility::Never {
            stable_round: traj.stable_round,
            certificate,
        }),
        None => Ok(RefinementFeasibility::NotWithin { max_rounds }),
    }
}
