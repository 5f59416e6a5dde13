use thiserror::Error;

use crate::mpoly::MultiPoly4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    DivisionByZero,

    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("representation form index {0} out of range 1..=48")]
    InvalidForm(usize),

    #[error("matrix is not in the span of the representation basis")]
    NotInRepresentation,

    #[error("rank {0} is not a multiple of four")]
    RankNotMultipleOfFour(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("minor relation violated between C{left} and C{right}")]
    RelationViolation {
        left: usize,
        right: usize,
        difference: MultiPoly4,
    },

    #[error("no Newton start converged to a certified root")]
    NoConvergence,

    #[error("manifold sampling collapsed: {certified} of {requested} points certified")]
    ManifoldCollapse { certified: usize, requested: usize },

    #[error("{0} did not converge")]
    ConvergenceFailure(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
