//! Errors raised while building, loading or saving algebra files.

use thiserror::Error;

/// Failures of algebra construction and serialization.
#[derive(Debug, Error)]
pub enum SpecError {
    /// The file could not be read or written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// The file is not a valid algebra JSON document.
    #[error("parse error: {0}")]
    Parse(String),
    /// Tensor or vector sizes disagree with the algebra dimension.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An entry is NaN or infinite.
    #[error("non-finite entry in {0}")]
    NonFinite(String),
    /// The representation matrices are linearly dependent.
    #[error("representation is not faithful (rank {rank} < n = {n})")]
    NotFaithful {
        /// Rank of the stacked representation matrices.
        rank: usize,
        /// Algebra dimension.
        n: usize,
    },
    /// `φ(e_i*)` differs from `φ(e_i)†`.
    #[error("representation is not a *-representation (residual {residual:.3e})")]
    NotStarRep {
        /// Largest entrywise residual.
        residual: f64,
    },
    /// The unit vector does not act as a two-sided identity.
    #[error("unit is not a two-sided identity (residual {residual:.3e})")]
    BadUnit {
        /// Largest coefficient residual.
        residual: f64,
    },
    /// A multiplication table is not a group.
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
}
