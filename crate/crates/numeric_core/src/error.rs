//! Error type shared by the numeric kernel.

use thiserror::Error;

/// Failures raised by numeric routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    /// Operand shapes are incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A routine that requires a Hermitian matrix received one that is not.
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian {
        /// Largest entrywise deviation from the adjoint.
        deviation: f64,
    },
    /// A PSD routine found an eigenvalue below the allowed tolerance.
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd {
        /// Smallest eigenvalue encountered.
        min_eigenvalue: f64,
    },
    /// A matrix is singular where an inverse was requested.
    #[error("matrix is singular (min eigenvalue {min_eigenvalue:.3e})")]
    Singular {
        /// Smallest eigenvalue encountered.
        min_eigenvalue: f64,
    },
    /// The target of a pullback is not in the span of the representation.
    #[error("element not in algebra image (residual {residual:.3e})")]
    NotInImage {
        /// Residual of the least-squares fit.
        residual: f64,
    },
    /// A non-finite value was produced.
    #[error("non-finite entry produced by {0}")]
    NonFinite(String),
}
