use std::io;

use thiserror::Error;

use crate::classical::RankVector;

/// Errors produced by the graph, linear-algebra and walk routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |m - m^H| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("Hermitian eigensolver did not converge after {0} sweeps")]
    EigenNoConvergence(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Iteration hit its step budget. `last` is the final iterate.
    #[error("no convergence within {iterations} iterations")]
    NotConverged { iterations: usize, last: RankVector },

    #[error("internal state corrupted: {0}")]
    Corrupted(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
