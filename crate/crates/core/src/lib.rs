//! PageRank and open-quantum-walk qPageRank on directed and undirected graphs.
//!
//! The quantum walker carries one `n x n` coin block per vertex. Each step
//! moves every block along the out-arcs of its vertex through Weyl coin
//! operators, keeps a share in place through the identity coin, and mixes in
//! a uniform teleportation term weighted by `1 - alpha`. The qPageRank of a
//! vertex is the limiting trace of its block.
//!
//! Modules:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigensolver, fidelity and
//!   trace distance of block-diagonal states.
//! - [`graph`]: the [`DiGraph`] model, edge-list ingestion and generators.
//! - [`classical`]: Google matrix and power-iteration PageRank.
//! - [`oqw`]: Weyl coins, the reduced walk step, the qPageRank loop and the
//!   two reference oracles (induced Markov matrix, full `n^2` channel).
//! - [`diagnostics`]: ranks, Kendall tau, average state and alpha sweeps.
//! - [`cli`]: the `qpr` command-line front end.

pub mod classical;
pub mod cli;
pub mod diagnostics;
mod error;
pub mod graph;
pub mod linalg;
pub mod oqw;
mod svg;

pub use classical::{google_matrix, hyperlink_matrix, pagerank, GoogleMatrix, RankVector};
pub use diagnostics::{
    alpha_sweep, average_state, compare, kendall_tau, rank_vertices, AlphaSweepRecord,
    RankingComparison,
};
pub use error::{Error, Result};
pub use graph::{generate, layers_from_root, DiGraph, FamilyParams};
pub use linalg::{ComplexMatrix, RealMatrix};
pub use oqw::{run, step, WalkParams, WalkRun, WalkState};

/// Default damping factor.
pub const DEFAULT_ALPHA: f64 = 0.85;
/// Default stopping tolerance on the Euclidean step distance.
pub const DEFAULT_EPSILON: f64 = 1e-4;
/// Default iteration budget.
pub const DEFAULT_MAX_STEPS: usize = 10_000;
