use thiserror::Error;

use crate::arith::Poly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NonMonic,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("a column of the right-hand side lies outside the column span")]
    NoSolution,

    #[error("columns are linearly dependent")]
    RankDeficient,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("zero vector has no height")]
    ZeroVector,

    #[error("invalid cyclic decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("chain vectors do not form a basis ({rank} independent of {dim})")]
    NotABasis { rank: usize, dim: usize },

    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    #[error("spectrum is not rational; unresolved factor {0}")]
    IrrationalSpectrum(Poly),
}
