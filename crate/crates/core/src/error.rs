use thiserror::Error;

use crate::measurement::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bipartite split {0}x{1} does not factor dimension {2}")]
    InvalidSplit(usize, usize, usize),

    #[error("operator carries no bipartite split")]
    MissingSplit,

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid POVM: {}", join_violations(.0))]
    InvalidPovm(Vec<Violation>),

    #[error("invalid stochastic map: {0}")]
    InvalidStochasticMap(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("channel is not trace preserving (residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: usize },

    #[error(
        "pre-processing channel is not unital detection-incoherent \
         (unital residual {unital_residual:.3e}, detection residual {detection_residual:.3e})"
    )]
    NotFreeOperation {
        unital_residual: f64,
        detection_residual: f64,
    },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("random generation failed: {0}")]
    Generation(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
