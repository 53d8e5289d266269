use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues ascending; `vectors` holds the matching orthonormal columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        self.vectors.column(j)
    }

    /// Largest `|Mv - lambda v|` entry over all pairs.
    pub fn max_residual(&self, m: &Matrix) -> f64 {
        let n = self.values.len();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let mv: f64 = (0..n).map(|k| m[(i, k)] * self.vectors[(k, j)]).sum();
                worst = worst.max((mv - self.values[j] * self.vectors[(i, j)]).abs());
            }
        }
        worst
    }

    /// Largest deviation of `V^T V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.values.len();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n)
                    .map(|k| self.vectors[(k, a)] * self.vectors[(k, b)])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

pub fn check_symmetric(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::SizeMismatch {
            what: "square matrix columns",
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let tol = 1e-10 * m.norm_inf().max(1.0);
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            let diff = (m[(i, j)] - m[(j, i)]).abs();
            if diff > tol || diff.is_nan() {
                return Err(Error::Asymmetric { i, j, diff });
            }
        }
    }
    Ok(())
}

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Equal eigenvalues keep their diagonal order.
pub fn sym_eigen(m: &Matrix) -> Result<EigenDecomposition> {
    check_symmetric(m)?;
    let n = m.rows();
    let mut a = m.clone();
    // Symmetrize exactly so rotations act on a truly symmetric matrix.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let frob = a.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= 1e-15 * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}
