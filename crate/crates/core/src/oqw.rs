//! Open quantum walk on a digraph and the qPageRank fixed-point loop.
//!
//! The walker lives in `C^n (coin) ⊗ C^n (position)`. Its state stays
//! block-diagonal in the position basis, so it is stored as one `n x n`
//! block per vertex. An arc `v -> u` acts on block `v` through the coin
//! `U_{v,u} / sqrt(outdeg(v) + 1)`, where `U_{r,s}` is the Weyl operator
//! `U[i][(i + s) mod n] = exp(2 pi i * i r / n)`. Every vertex also keeps an
//! identity coin for itself; a dangling vertex keeps only that.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::classical::{check_alpha, RankVector};
use crate::error::{invalid, Error, Result};
use crate::graph::DiGraph;
use crate::linalg::{hermitian_eig, ComplexMatrix, RealMatrix, HERMITIAN_TOL, PSD_TOL};
use crate::{DEFAULT_ALPHA, DEFAULT_EPSILON, DEFAULT_MAX_STEPS};

/// Largest vertex count accepted by the full-space reference channel.
pub const FULL_SPACE_MAX_N: usize = 6;

const TRACE_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-9;

/// Damping factor, stopping tolerance and step budget of a walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    pub alpha: f64,
    pub epsilon: f64,
    pub max_steps: usize,
}

impl WalkParams {
    pub fn new(alpha: f64, epsilon: f64, max_steps: usize) -> Result<Self> {
        let p = Self {
            alpha,
            epsilon,
            max_steps,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(invalid(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_steps == 0 {
            return Err(invalid("max_steps must be at least 1"));
        }
        Ok(())
    }
}

impl Default for WalkParams {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            epsilon: DEFAULT_EPSILON,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

/// One Hermitian PSD coin block per vertex, traces summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    blocks: Vec<ComplexMatrix>,
}

impl WalkState {
    /// Every block `I / n^2`, so each vertex starts with probability `1 / n`.
    pub fn initial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("walk needs at least one vertex"));
        }
        let block = ComplexMatrix::identity(n).scale(1.0 / (n * n) as f64);
        Ok(Self {
            blocks: vec![block; n],
        })
    }

    /// Wraps blocks after a shape check. Use [`WalkState::validate`] for the
    /// full Hermitian/PSD/trace check.
    pub fn from_blocks(blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let n = blocks.len();
        if n == 0 {
            return Err(invalid("walk state needs at least one block"));
        }
        if let Some(b) = blocks.iter().find(|b| b.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
        Ok(Self { blocks })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<ComplexMatrix> {
        self.blocks
    }

    /// Sum of block traces (complex; the imaginary part should vanish).
    pub fn total_trace(&self) -> Complex64 {
        self.blocks.iter().map(ComplexMatrix::trace).sum()
    }

    /// Largest Hermiticity residual over all blocks.
    pub fn hermitian_residual(&self) -> f64 {
        self.blocks.iter().map(ComplexMatrix::hermitian_residual).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue over all blocks.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut min = f64::INFINITY;
        for b in &self.blocks {
            let eig = hermitian_eig(b)?;
            min = min.min(eig.values[0]);
        }
        Ok(min)
    }

    pub fn validate(&self) -> Result<()> {
        let residual = self.hermitian_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian(residual));
        }
        let min = self.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        let tr = self.total_trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(invalid(format!("walk state has total trace {tr}, not 1")));
        }
        Ok(())
    }

    /// Per-vertex occupation probabilities `trace(rho_v)`.
    pub fn probabilities(&self) -> Result<RankVector> {
        let mut values = Vec::with_capacity(self.n());
        for (v, b) in self.blocks.iter().enumerate() {
            let tr = b.trace();
            if tr.im.abs() > IMAG_TOL {
                return Err(Error::Corrupted(format!(
                    "block {v} has imaginary trace {:e}",
                    tr.im
                )));
            }
            values.push(tr.re);
        }
        RankVector::new(values).map_err(|e| Error::Corrupted(e.to_string()))
    }
}

/// `exp(2 pi i k / n)` for `k in 0..n`, exact at the quarter turns.
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            if (4 * k) % n == 0 {
                match 4 * k / n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
            }
        })
        .collect()
}

/// Weyl operator `U_{r,s}`: `U[i][(i + s) mod n] = omega^(i r)`.
pub fn weyl(n: usize, r: usize, s: usize) -> Result<ComplexMatrix> {
    if n == 0 || r >= n || s >= n {
        return Err(invalid(format!("Weyl indices ({r}, {s}) out of range for dimension {n}")));
    }
    let roots = roots_of_unity(n);
    let mut u = ComplexMatrix::zeros(n);
    for i in 0..n {
        u[(i, (i + s) % n)] = roots[(i * r) % n];
    }
    Ok(u)
}

/// Coins applied at `v`, paired with the vertex each one moves the walker
/// to: one per out-neighbour (ascending), then the self coin.
pub fn coin_set(g: &DiGraph, v: usize) -> Result<Vec<(usize, ComplexMatrix)>> {
    let n = g.n();
    if v >= n {
        return Err(invalid(format!("vertex {v} out of range")));
    }
    if g.is_dangling(v) {
        return Ok(vec![(v, ComplexMatrix::identity(n))]);
    }
    let scale = 1.0 / ((g.out_degree(v) + 1) as f64).sqrt();
    let mut coins = Vec::with_capacity(g.out_degree(v) + 1);
    for &u in g.out_neighbors(v) {
        coins.push((u, weyl(n, v, u)?.scale(scale)));
    }
    coins.push((v, ComplexMatrix::identity(n).scale(scale)));
    Ok(coins)
}

/// `acc += w * U rho U^H` for `U = U_{r,s}`, using
/// `(U rho U^H)[i][j] = omega^((i - j) r) rho[i + s][j + s]`.
fn add_weyl_conjugate(acc: &mut ComplexMatrix, rho: &ComplexMatrix, r: usize, s: usize, w: f64, roots: &[Complex64]) {
    let n = rho.dim();
    let src = rho.as_slice();
    let dst = acc.as_mut_slice();
    for i in 0..n {
        let is = (i + s) % n;
        let row = &src[is * n..(is + 1) * n];
        let out = &mut dst[i * n..(i + 1) * n];
        for (j, o) in out.iter_mut().enumerate() {
            let x = row[(j + s) % n];
            *o += if r == 0 {
                x * w
            } else {
                roots[((i + n - j) * r) % n] * x * w
            };
        }
    }
}

/// One step of the damped walk:
/// `rho_u' = alpha * sum_{v in B(u) + u} C rho_v C^H + (1 - alpha) / n * sum_v rho_v`.
pub fn step(state: &WalkState, g: &DiGraph, alpha: f64) -> Result<WalkState> {
    check_alpha(alpha)?;
    let n = g.n();
    if state.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.n(),
        });
    }
    let roots = roots_of_unity(n);
    let mut total = ComplexMatrix::zeros(n);
    for rho in &state.blocks {
        total.add_scaled_assign(1.0, rho);
    }
    let teleport = (1.0 - alpha) / n as f64;

    let blocks = (0..n)
        .map(|u| {
            let mut acc = ComplexMatrix::zeros(n);
            for &v in g.in_neighbors(u) {
                let w = alpha / (g.out_degree(v) + 1) as f64;
                add_weyl_conjugate(&mut acc, &state.blocks[v], v, u, w, &roots);
            }
            let self_w = if g.is_dangling(u) {
                alpha
            } else {
                alpha / (g.out_degree(u) + 1) as f64
            };
            acc.add_scaled_assign(self_w, &state.blocks[u]);
            acc.add_scaled_assign(teleport, &total);
            acc
        })
        .collect();
    Ok(WalkState { blocks })
}

/// Result of iterating [`step`] from the initial state.
#[derive(Debug, Clone)]
pub struct WalkRun {
    /// Final probabilities.
    pub qpr: RankVector,
    /// Number of steps performed.
    pub steps: usize,
    pub converged: bool,
    /// Probabilities after steps `0..=steps`.
    pub trajectory: Vec<RankVector>,
    /// Euclidean distance between consecutive probability vectors;
    /// `distances[t - 1]` belongs to step `t`.
    pub distances: Vec<f64>,
    pub final_state: WalkState,
    /// States after steps `0..=steps`, when requested.
    pub history: Option<Vec<WalkState>>,
}

/// Iterates until the step distance drops below `epsilon` or the budget is
/// spent, calling `observe(t, state)` on every state including the initial
/// one. Running out of steps is reported through `converged`.
pub fn evolve_observed(
    g: &DiGraph,
    params: &WalkParams,
    mut observe: impl FnMut(usize, &WalkState),
) -> Result<WalkRun> {
    params.validate()?;
    let mut state = WalkState::initial(g.n())?;
    let mut prev = state.probabilities()?;
    observe(0, &state);
    let mut trajectory = vec![prev.clone()];
    let mut distances = Vec::new();
    let mut converged = false;
    let mut steps = 0;
    while steps < params.max_steps {
        state = step(&state, g, params.alpha)?;
        steps += 1;
        observe(steps, &state);
        let p = state.probabilities()?;
        let d = p.distance(&prev);
        distances.push(d);
        trajectory.push(p.clone());
        prev = p;
        if d < params.epsilon {
            converged = true;
            break;
        }
    }
    Ok(WalkRun {
        qpr: prev,
        steps,
        converged,
        trajectory,
        distances,
        final_state: state,
        history: None,
    })
}

/// Like [`run`] but reports non-convergence through `WalkRun::converged`.
pub fn evolve(g: &DiGraph, params: &WalkParams, record_history: bool) -> Result<WalkRun> {
    let mut history = Vec::new();
    let mut walk = evolve_observed(g, params, |_, s| {
        if record_history {
            history.push(s.clone());
        }
    })?;
    if record_history {
        walk.history = Some(history);
    }
    Ok(walk)
}

/// qPageRank: iterate from the initial state until the Euclidean distance
/// between successive probability vectors is below `epsilon`.
pub fn run(g: &DiGraph, params: &WalkParams, record_history: bool) -> Result<WalkRun> {
    let walk = evolve(g, params, record_history)?;
    if !walk.converged {
        return Err(Error::NotConverged {
            iterations: walk.steps,
            last: walk.qpr,
        });
    }
    Ok(walk)
}

/// Column-stochastic matrix `M` with `p(t + 1) = M p(t)` for the vertex
/// probabilities of [`step`]. Exists because `C^H C = I / (outdeg + 1)`.
pub fn induced_markov_matrix(g: &DiGraph, alpha: f64) -> Result<RealMatrix> {
    check_alpha(alpha)?;
    let n = g.n();
    let mut m = RealMatrix::filled(n, n, (1.0 - alpha) / n as f64);
    for v in 0..n {
        if g.is_dangling(v) {
            m[(v, v)] += alpha;
            continue;
        }
        let w = alpha / (g.out_degree(v) + 1) as f64;
        for &u in g.out_neighbors(v) {
            m[(u, v)] += w;
        }
        m[(v, v)] += w;
    }
    Ok(m)
}

fn check_full_space(n: usize) -> Result<()> {
    if n > FULL_SPACE_MAX_N {
        return Err(invalid(format!(
            "full-space channel limited to {FULL_SPACE_MAX_N} vertices, got {n}"
        )));
    }
    Ok(())
}

/// `|u><v|` on the position space.
fn position_op(n: usize, u: usize, v: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m[(u, v)] = Complex64::new(1.0, 0.0);
    m
}

/// `sum_v rho_v ⊗ |v><v|` as an `n^2 x n^2` matrix, coin index major.
pub fn assemble_full(state: &WalkState) -> Result<ComplexMatrix> {
    let n = state.n();
    check_full_space(n)?;
    let mut full = ComplexMatrix::zeros(n * n);
    for (v, rho) in state.blocks.iter().enumerate() {
        full = full.add(&rho.kron(&position_op(n, v, v)))?;
    }
    Ok(full)
}

/// Inverse of [`assemble_full`]: reads the diagonal position blocks.
pub fn extract_blocks(full: &ComplexMatrix, n: usize) -> Result<WalkState> {
    if full.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: full.dim(),
        });
    }
    let blocks = (0..n)
        .map(|v| ComplexMatrix::from_fn(n, |i, j| full[(i * n + v, j * n + v)]))
        .collect();
    WalkState::from_blocks(blocks)
}

/// Weighted Kraus operators of the full channel: `(alpha, C ⊗ |u><v|)` for
/// every coin, then `(1 - alpha, I ⊗ |u><v| / sqrt(n))` for every pair.
pub fn full_space_kraus(g: &DiGraph, alpha: f64) -> Result<Vec<(f64, ComplexMatrix)>> {
    check_alpha(alpha)?;
    let n = g.n();
    check_full_space(n)?;
    let mut ops = Vec::new();
    for v in 0..n {
        for (u, coin) in coin_set(g, v)? {
            ops.push((alpha, coin.kron(&position_op(n, u, v))));
        }
    }
    let damp = ComplexMatrix::identity(n).scale(1.0 / (n as f64).sqrt());
    for u in 0..n {
        for v in 0..n {
            ops.push((1.0 - alpha, damp.kron(&position_op(n, u, v))));
        }
    }
    Ok(ops)
}

/// `sum w K^H K` over [`full_space_kraus`]; the identity for a valid channel.
pub fn full_space_completeness(g: &DiGraph, alpha: f64) -> Result<ComplexMatrix> {
    let n = g.n();
    let mut acc = ComplexMatrix::zeros(n * n);
    for (w, k) in full_space_kraus(g, alpha)? {
        acc.add_scaled_assign(w, &k.conj_transpose().matmul(&k)?);
    }
    Ok(acc)
}

/// Reference implementation of [`step`] on the assembled `n^2 x n^2`
/// density matrix. Only for `n <= FULL_SPACE_MAX_N`.
pub fn full_space_step(state: &WalkState, g: &DiGraph, alpha: f64) -> Result<WalkState> {
    let n = g.n();
    if state.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.n(),
        });
    }
    let rho = assemble_full(state)?;
    let mut out = ComplexMatrix::zeros(n * n);
    for (w, k) in full_space_kraus(g, alpha)? {
        let term = k.matmul(&rho)?.matmul(&k.conj_transpose())?;
        out.add_scaled_assign(w, &term);
    }
    extract_blocks(&out, n)
}
