//! Lloyd's k-means with k-means++ seeding and best-of-restarts selection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_ITERS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub labels: Vec<usize>,
    pub centroids: Matrix,
    /// Sum of squared distances to the assigned centroid.
    pub inertia: f64,
    /// Inertia reached by every restart, in order.
    pub restart_inertias: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &Matrix) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for c in 0..centroids.rows() {
        let d = sq_dist(point, centroids.row(c));
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn plus_plus_seed(points: &Matrix, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let n = points.rows();
    let mut centroids = Matrix::zeros(k, points.cols());
    let first = rng.random_range(0..n);
    centroids.row_mut(0).copy_from_slice(points.row(first));
    let mut dist: Vec<f64> = points
        .iter_rows()
        .map(|p| sq_dist(p, centroids.row(0)))
        .collect();
    for c in 1..k {
        let total: f64 = dist.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, &d) in dist.iter().enumerate() {
                if target < d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        centroids.row_mut(c).copy_from_slice(points.row(pick));
        for (i, p) in points.iter_rows().enumerate() {
            dist[i] = dist[i].min(sq_dist(p, centroids.row(c)));
        }
    }
    centroids
}

fn lloyd(points: &Matrix, mut centroids: Matrix) -> (Vec<usize>, Matrix, f64) {
    let n = points.rows();
    let k = centroids.rows();
    let mut labels = vec![usize::MAX; n];
    for _ in 0..MAX_ITERS {
        let mut changed = false;
        let mut dists = vec![0.0; n];
        for (i, p) in points.iter_rows().enumerate() {
            let (c, d) = nearest(p, &centroids);
            dists[i] = d;
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }
        // An empty cluster takes the point farthest from its own centroid.
        let mut counts = vec![0usize; k];
        labels.iter().for_each(|&l| counts[l] += 1);
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let far = (0..n)
                .filter(|&i| counts[labels[i]] > 1)
                .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)));
            if let Some(i) = far {
                counts[labels[i]] -= 1;
                labels[i] = c;
                counts[c] = 1;
                dists[i] = 0.0;
                changed = true;
            }
        }
        let mut sums = Matrix::zeros(k, points.cols());
        for (i, p) in points.iter_rows().enumerate() {
            sums.row_mut(labels[i])
                .iter_mut()
                .zip(p)
                .for_each(|(s, x)| *s += x);
        }
        for (c, &count) in counts.iter().enumerate() {
            if count > 0 {
                let cnt = count as f64;
                let row = sums.row(c).iter().map(|s| s / cnt).collect::<Vec<_>>();
                centroids.row_mut(c).copy_from_slice(&row);
            }
        }
        if !changed {
            break;
        }
    }
    let inertia = points
        .iter_rows()
        .zip(&labels)
        .map(|(p, &l)| sq_dist(p, centroids.row(l)))
        .sum();
    (labels, centroids, inertia)
}

/// Cluster the rows of `points` into `k` groups.
pub fn kmeans(points: &Matrix, k: usize, restarts: usize, seed: u64) -> Result<KMeansFit> {
    let n = points.rows();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k-means needs 1 <= k <= {n}, got k = {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<KMeansFit> = None;
    let mut restart_inertias = Vec::with_capacity(restarts.max(1));
    for _ in 0..restarts.max(1) {
        let seeds = plus_plus_seed(points, k, &mut rng);
        let (labels, centroids, inertia) = lloyd(points, seeds);
        restart_inertias.push(inertia);
        if best.as_ref().is_none_or(|b| inertia < b.inertia) {
            best = Some(KMeansFit {
                labels,
                centroids,
                inertia,
                restart_inertias: Vec::new(),
            });
        }
    }
    let mut fit = best.unwrap_or_else(|| unreachable!());
    fit.restart_inertias = restart_inertias;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_two_blobs() {
        let pts = Matrix::from_rows(&[[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [5.0, 5.0], [5.1, 5.0]])
            .unwrap();
        let fit = kmeans(&pts, 2, 5, 3).unwrap();
        assert_eq!(fit.labels[0], fit.labels[1]);
        assert_eq!(fit.labels[0], fit.labels[2]);
        assert_eq!(fit.labels[3], fit.labels[4]);
        assert_ne!(fit.labels[0], fit.labels[3]);
        assert!(fit.restart_inertias.iter().all(|&r| fit.inertia <= r));
    }

    #[test]
    fn duplicate_points_fill_every_cluster() {
        let pts = Matrix::from_rows(&[[1.0], [1.0], [1.0], [2.0]]).unwrap();
        let fit = kmeans(&pts, 3, 4, 0).unwrap();
        let mut used = fit.labels.clone();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 3);
    }

    #[test]
    fn rejects_bad_k() {
        let pts = Matrix::zeros(2, 1);
        assert!(kmeans(&pts, 0, 1, 0).is_err());
        assert!(kmeans(&pts, 3, 1, 0).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let pts = Matrix::from_rows(&[[0.0], [1.0], [2.0], [10.0], [11.0], [20.0]]).unwrap();
        assert_eq!(
            kmeans(&pts, 3, 5, 9).unwrap(),
            kmeans(&pts, 3, 5, 9).unwrap()
        );
    }
}
