//! Small hand-built instances with known scores, shared by tests, benches and
//! the command line.

use crate::graph::{Graph, Partition};
use crate::matrix::Matrix;

/// A seen/unseen pair of coloured graphs and their expected `(Γ, Λ, Q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFixture {
    pub name: &'static str,
    pub zeta_s: Vec<usize>,
    pub p_s: Partition,
    pub zeta_u: Vec<usize>,
    pub p_u: Partition,
    pub expected: (f64, f64, f64),
}

const GREEN: usize = 0;
const BLUE: usize = 1;
const LIGHT_BLUE: usize = 2;
const PINK: usize = 3;
const LIGHT_GREEN: usize = 4;
const RED: usize = 5;
const ORANGE: usize = 6;
const PALE_BLUE: usize = 7;
const GREY: usize = 8;

fn pair(
    name: &'static str,
    seen: &[&[usize]],
    unseen: &[&[usize]],
    expected: (f64, f64, f64),
) -> PairFixture {
    let build = |groups: &[&[usize]]| {
        let mut zeta = Vec::new();
        let mut labels = Vec::new();
        for (g, colours) in groups.iter().enumerate() {
            zeta.extend_from_slice(colours);
            labels.extend(std::iter::repeat_n(g, colours.len()));
        }
        let p = Partition::from_labels(&labels)
            .unwrap_or_else(|_| unreachable!("fixture groups are nonempty"));
        (zeta, p)
    };
    let (zeta_s, p_s) = build(seen);
    let (zeta_u, p_u) = build(unseen);
    PairFixture {
        name,
        zeta_s,
        p_s,
        zeta_u,
        p_u,
        expected,
    }
}

/// The four seen/unseen examples: valid and transferable; valid but not
/// transferable; transferable but invalid; valid and transferable with
/// extra seen colours.
pub fn pair_fixtures() -> Vec<PairFixture> {
    vec![
        pair(
            "a",
            &[&[GREEN, GREEN], &[BLUE, BLUE]],
            &[&[GREEN], &[BLUE, BLUE]],
            (1.0, 1.0, 1.0),
        ),
        pair(
            "b",
            &[&[LIGHT_BLUE, PINK, LIGHT_GREEN], &[BLUE, RED, GREEN]],
            &[
                &[LIGHT_BLUE, ORANGE, PINK, LIGHT_GREEN],
                &[BLUE, PALE_BLUE, RED, GREEN],
            ],
            (1.0, 0.0, 0.0),
        ),
        pair(
            "c",
            &[&[RED, RED], &[RED, RED]],
            &[&[RED], &[RED]],
            (0.0, 1.0, 0.0),
        ),
        pair(
            "d",
            &[&[LIGHT_BLUE, PINK, GREEN], &[BLUE, RED, GREY]],
            &[&[GREEN], &[BLUE]],
            (1.0, 1.0, 1.0),
        ),
    ]
}

/// A graph, an initial colouring and a target partition for refinement
/// experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementFixture {
    pub graph: Graph,
    pub init: Vec<usize>,
    pub target: Partition,
}

/// Two four-node communities joined by one edge, with a doubled edge on each
/// side. Uniform colours cross the communities until round 5.
pub fn late_separation() -> RefinementFixture {
    let edges = [
        (0, 3),
        (1, 2),
        (1, 2),
        (1, 0),
        (2, 0),
        (7, 6),
        (4, 6),
        (7, 5),
        (4, 5),
        (7, 6),
        (3, 4),
    ];
    RefinementFixture {
        graph: Graph::new(8, edges).unwrap_or_else(|_| unreachable!("fixture edges are in range")),
        init: vec![0; 8],
        target: Partition::from_labels(&[0, 0, 0, 0, 1, 1, 1, 1])
            .unwrap_or_else(|_| unreachable!()),
    }
}

/// Two triangles joined by one edge. The swap of the triangles is an
/// automorphism, so no refinement of a uniform colouring separates them.
pub fn mirrored_triangles() -> RefinementFixture {
    let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)];
    RefinementFixture {
        graph: Graph::new(6, edges).unwrap_or_else(|_| unreachable!("fixture edges are in range")),
        init: vec![0; 6],
        target: Partition::from_labels(&[0, 0, 0, 1, 1, 1]).unwrap_or_else(|_| unreachable!()),
    }
}

/// Feature regimes for [`two_communities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureRegime {
    /// One feature vector per community.
    Aligned,
    /// A distinct feature vector per node.
    Unique,
    /// Two feature vectors, each used in both communities.
    Crossing,
}

/// Ten-node multigraph with two dense communities `0..5` and `5..10`.
pub fn two_communities(regime: FeatureRegime) -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 2),
        (1, 3),
        (2, 3),
        (3, 4),
        (2, 4),
        (0, 4),
        (0, 1),
        (5, 6),
        (5, 7),
        (6, 7),
        (6, 8),
        (7, 8),
        (8, 9),
        (7, 9),
        (5, 9),
        (8, 9),
        (4, 5),
    ];
    let n = 10;
    let x = match regime {
        FeatureRegime::Aligned => Matrix::from_rows(
            &(0..n)
                .map(|v| if v < 5 { [1.0, 0.0] } else { [0.0, 1.0] })
                .collect::<Vec<_>>(),
        ),
        FeatureRegime::Unique => Ok(Matrix::identity(n)),
        FeatureRegime::Crossing => Matrix::from_rows(
            &(0..n)
                .map(|v| if v % 2 == 0 { [1.0, 0.0] } else { [0.0, 1.0] })
                .collect::<Vec<_>>(),
        ),
    }
    .unwrap_or_else(|_| unreachable!("fixture rows are rectangular"));
    Graph::new(n, edges)
        .and_then(|g| g.with_features(x))
        .unwrap_or_else(|_| unreachable!("fixture graph is valid"))
}
