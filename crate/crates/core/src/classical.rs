//! Classical Google PageRank by power iteration on the dense Google matrix.

use std::ops::Index;

use crate::error::{invalid, Error, Result};
use crate::graph::DiGraph;
use crate::linalg::RealMatrix;

const SUM_TOL: f64 = 1e-9;

/// Per-vertex probability vector: entries in `[0, 1]`, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("rank vector must be non-empty"));
        }
        if let Some(x) = values.iter().find(|x| !x.is_finite() || **x < -SUM_TOL || **x > 1.0 + SUM_TOL) {
            return Err(invalid(format!("rank value {x} outside [0, 1]")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(invalid(format!("rank vector sums to {sum}, not 1")));
        }
        Ok(Self(values))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean distance to another vector of the same length.
    pub fn distance(&self, other: &Self) -> f64 {
        euclidean(&self.0, &other.0)
    }
}

impl Index<usize> for RankVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Row-stochastic Google matrix `alpha * S + (1 - alpha) / n * J`.
#[derive(Debug, Clone, PartialEq)]
pub struct GoogleMatrix {
    alpha: f64,
    matrix: RealMatrix,
}

impl GoogleMatrix {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    /// One power-iteration step `pi * G`.
    pub fn apply(&self, pi: &[f64]) -> Vec<f64> {
        self.matrix.vec_mul(pi)
    }
}

/// `h[u][v] = 1 / outdeg(u)` for every arc `u -> v`; dangling rows are zero.
pub fn hyperlink_matrix(g: &DiGraph) -> RealMatrix {
    let n = g.n();
    let mut h = RealMatrix::zeros(n, n);
    for u in 0..n {
        let d = g.out_degree(u);
        for &v in g.out_neighbors(u) {
            h[(u, v)] = 1.0 / d as f64;
        }
    }
    h
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

/// Google matrix with dangling rows replaced by the uniform row.
pub fn google_matrix(g: &DiGraph, alpha: f64) -> Result<GoogleMatrix> {
    check_alpha(alpha)?;
    let n = g.n();
    let uniform = 1.0 / n as f64;
    let teleport = (1.0 - alpha) * uniform;
    let h = hyperlink_matrix(g);
    let mut matrix = RealMatrix::filled(n, n, teleport);
    for u in 0..n {
        let dangling = g.is_dangling(u);
        for v in 0..n {
            let s = if dangling { uniform } else { h[(u, v)] };
            matrix[(u, v)] += alpha * s;
        }
    }
    Ok(GoogleMatrix { alpha, matrix })
}

/// Power iteration from the uniform vector until the Euclidean step distance
/// drops below `epsilon`. Returns the final vector and the number of
/// multiplications performed.
pub fn pagerank(g: &DiGraph, alpha: f64, epsilon: f64, max_iters: usize) -> Result<(RankVector, usize)> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    if max_iters == 0 {
        return Err(invalid("max_iters must be at least 1"));
    }
    let google = google_matrix(g, alpha)?;
    let mut pi = vec![1.0 / g.n() as f64; g.n()];
    for k in 1..=max_iters {
        let next = google.apply(&pi);
        let dist = euclidean(&next, &pi);
        pi = next;
        if dist < epsilon {
            return Ok((RankVector::new(pi)?, k));
        }
    }
    Err(Error::NotConverged {
        iterations: max_iters,
        last: RankVector::new(pi)?,
    })
}
