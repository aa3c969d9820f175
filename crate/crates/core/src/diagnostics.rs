//! Rankings, Kendall tau, average states and alpha sweeps.

use crate::classical::{check_alpha, pagerank, RankVector};
use crate::error::{invalid, Error, Result};
use crate::graph::DiGraph;
use crate::linalg::{fidelity_blocks, trace_distance_blocks, ComplexMatrix};
use crate::oqw::{evolve, evolve_observed, WalkParams, WalkState};

/// Values are compared on this grid, so round-off between values that are
/// equal in exact arithmetic does not decide their order.
pub const TIE_RESOLUTION: f64 = 1e-12;

/// Ranks `1..=n`, rank 1 for the largest value; ties go to the smaller id.
pub fn rank_vertices(values: &RankVector) -> Vec<usize> {
    let order = order_by_value(values.as_slice());
    let mut ranks = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        ranks[v] = pos + 1;
    }
    ranks
}

fn order_by_value(values: &[f64]) -> Vec<usize> {
    let keys: Vec<i64> = values.iter().map(|x| (x / TIE_RESOLUTION).round() as i64).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));
    order
}

/// The `k` highest-ranked vertices, best first.
pub fn top_k(values: &RankVector, k: usize) -> Vec<usize> {
    let mut order = order_by_value(values.as_slice());
    order.truncate(k);
    order
}

fn check_permutation(ranks: &[usize]) -> Result<()> {
    let n = ranks.len();
    let mut seen = vec![false; n];
    for &r in ranks {
        if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
            return Err(invalid("ranks are not a permutation of 1..n"));
        }
    }
    Ok(())
}

/// Kendall tau-a over all vertex pairs. Both inputs must be permutations of
/// `1..=n`; a single vertex counts as perfect agreement.
pub fn kendall_tau(rank_a: &[usize], rank_b: &[usize]) -> Result<f64> {
    if rank_a.len() != rank_b.len() {
        return Err(Error::DimensionMismatch {
            expected: rank_a.len(),
            got: rank_b.len(),
        });
    }
    check_permutation(rank_a)?;
    check_permutation(rank_b)?;
    let n = rank_a.len();
    if n < 2 {
        return Ok(1.0);
    }
    let mut score: i64 = 0;
    for i in 0..n {
        for j in i + 1..n {
            let a = rank_a[i] < rank_a[j];
            let b = rank_b[i] < rank_b[j];
            score += if a == b { 1 } else { -1 };
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(score as f64 / pairs)
}

/// Classical and quantum rankings of one graph side by side.
#[derive(Debug, Clone)]
pub struct RankingComparison {
    pub tau: f64,
    /// Classical PageRank ranks.
    pub rank_a: Vec<usize>,
    /// qPageRank ranks.
    pub rank_b: Vec<usize>,
    pub top_k_a: Vec<usize>,
    pub top_k_b: Vec<usize>,
    pub pagerank: RankVector,
    pub qpagerank: RankVector,
    pub pagerank_iterations: usize,
    pub qpagerank_steps: usize,
}

pub const TOP_K: usize = 5;

/// Runs both methods with the same damping, tolerance and budget.
pub fn compare(g: &DiGraph, params: &WalkParams) -> Result<RankingComparison> {
    params.validate()?;
    let (pr, iterations) = pagerank(g, params.alpha, params.epsilon, params.max_steps)?;
    let walk = crate::oqw::run(g, params, false)?;
    Ok(comparison_of(pr, iterations, walk.qpr, walk.steps))
}

pub(crate) fn comparison_of(pr: RankVector, iterations: usize, qpr: RankVector, steps: usize) -> RankingComparison {
    let rank_a = rank_vertices(&pr);
    let rank_b = rank_vertices(&qpr);
    let tau = kendall_tau(&rank_a, &rank_b).expect("ranks are permutations");
    RankingComparison {
        tau,
        top_k_a: top_k(&pr, TOP_K),
        top_k_b: top_k(&qpr, TOP_K),
        rank_a,
        rank_b,
        pagerank: pr,
        qpagerank: qpr,
        pagerank_iterations: iterations,
        qpagerank_steps: steps,
    }
}

/// Running blockwise mean of walk states.
#[derive(Debug, Clone)]
pub struct StateAverager {
    sum: Vec<ComplexMatrix>,
    count: usize,
}

impl StateAverager {
    pub fn new(n: usize) -> Self {
        Self {
            sum: vec![ComplexMatrix::zeros(n); n],
            count: 0,
        }
    }

    pub fn push(&mut self, state: &WalkState) -> Result<()> {
        if state.n() != self.sum.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sum.len(),
                got: state.n(),
            });
        }
        for (acc, b) in self.sum.iter_mut().zip(state.blocks()) {
            acc.add_scaled_assign(1.0, b);
        }
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn mean(&self) -> Result<WalkState> {
        if self.count == 0 {
            return Err(invalid("cannot average an empty history"));
        }
        let w = 1.0 / self.count as f64;
        WalkState::from_blocks(self.sum.iter().map(|b| b.scale(w)).collect())
    }
}

/// Blockwise arithmetic mean of a non-empty history.
pub fn average_state(history: &[WalkState]) -> Result<WalkState> {
    let first = history.first().ok_or_else(|| invalid("cannot average an empty history"))?;
    let mut avg = StateAverager::new(first.n());
    for s in history {
        avg.push(s)?;
    }
    avg.mean()
}

/// Distance between the time-averaged state and the final state for one
/// damping factor. Metrics are `None` when the walk did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweepRecord {
    pub alpha: f64,
    pub steps: usize,
    pub converged: bool,
    pub fidelity: Option<f64>,
    pub trace_distance: Option<f64>,
}

/// `0.05, 0.10, ..., 0.95` (0.85 is already on the grid).
pub fn default_alpha_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    grid.push(0.85);
    normalize_grid(grid)
}

/// Sorts ascending and drops values equal to the previous one within 1e-12.
fn normalize_grid(mut alphas: Vec<f64>) -> Vec<f64> {
    alphas.sort_by(f64::total_cmp);
    alphas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    alphas
}

/// For every alpha, run the walk and compare the time-averaged state with the
/// final one. The average is accumulated on the fly instead of storing the
/// full history. Records come out in ascending alpha order.
pub fn alpha_sweep(g: &DiGraph, alphas: &[f64], epsilon: f64, max_steps: usize) -> Result<Vec<AlphaSweepRecord>> {
    if alphas.is_empty() {
        return Err(invalid("alpha grid is empty"));
    }
    for &a in alphas {
        check_alpha(a)?;
    }
    let mut records = Vec::new();
    for alpha in normalize_grid(alphas.to_vec()) {
        let params = WalkParams::new(alpha, epsilon, max_steps)?;
        let mut avg = StateAverager::new(g.n());
        let walk = evolve_observed(g, &params, |_, s| {
            avg.push(s).expect("walk states match the graph size");
        })?;
        let (fidelity, trace_distance) = if walk.converged {
            let mean = avg.mean()?;
            (
                Some(fidelity_blocks(&mean, &walk.final_state)?),
                Some(trace_distance_blocks(&mean, &walk.final_state)?),
            )
        } else {
            (None, None)
        };
        records.push(AlphaSweepRecord {
            alpha,
            steps: walk.steps,
            converged: walk.converged,
            fidelity,
            trace_distance,
        });
    }
    Ok(records)
}

/// Same as [`alpha_sweep`] for one alpha, but averaging a recorded history.
/// Kept as a cross-check of the streaming version.
pub fn alpha_record_from_history(g: &DiGraph, params: &WalkParams) -> Result<AlphaSweepRecord> {
    let walk = evolve(g, params, true)?;
    let history = walk.history.as_deref().expect("history requested");
    let mean = average_state(history)?;
    let last = history.last().expect("history is never empty");
    Ok(AlphaSweepRecord {
        alpha: params.alpha,
        steps: walk.steps,
        converged: walk.converged,
        fidelity: walk.converged.then(|| fidelity_blocks(&mean, last)).transpose()?,
        trace_distance: walk.converged.then(|| trace_distance_blocks(&mean, last)).transpose()?,
    })
}
