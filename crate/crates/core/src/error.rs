use thiserror::Error;

use crate::algebra::{AlgebraKind, BasisElement};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix size n must be at least 2, got {0}")]
    InvalidSize(usize),

    #[error("{element} is not a basis element of {kind}")]
    InadmissibleBasis { element: BasisElement, kind: AlgebraKind },

    #[error("invalid basis element: {0}")]
    InvalidBasis(String),

    /// Operands live in different algebras, or an operation was handed an
    /// algebra family it is not defined for.
    #[error("expected {expected}, found {found}")]
    KindMismatch { expected: String, found: AlgebraKind },

    #[error("matrix is not an element of {kind}: {reason}")]
    Membership { kind: AlgebraKind, reason: String },

    #[error("lie closure requires at least one generator")]
    EmptyGenerators,

    #[error("coefficient pool is empty")]
    EmptyPool,

    #[error("coefficient pool contains zero")]
    ZeroInPool,

    #[error("digraph is not simple: self-loop at node {0}")]
    NotSimple(usize),

    #[error("colored multigraph has a self-loop at node {0}")]
    HasSelfLoop(usize),

    #[error("graphs have different node counts ({0} and {1})")]
    SizeMismatch(usize, usize),

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("oracle needs at least one trial")]
    NoTrials,
}

impl Error {
    pub(crate) fn kind_mismatch(expected: impl ToString, found: AlgebraKind) -> Self {
        Error::KindMismatch { expected: expected.to_string(), found }
    }
}
