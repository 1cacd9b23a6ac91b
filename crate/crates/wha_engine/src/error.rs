//! Errors raised by the engine.

use algebra_spec::SpecError;
use numeric_core::NumericError;
use thiserror::Error;

/// Failures of engine computations.
#[derive(Debug, Error)]
pub enum EngineError {
    /// A numeric kernel routine failed.
    #[error(transparent)]
    Numeric(#[from] NumericError),
    /// Building a derived algebra failed.
    #[error(transparent)]
    Spec(#[from] SpecError),
    /// A dense tensor would exceed the entry budget.
    #[error("budget exceeded: {entries} entries requested, budget {budget}")]
    Budget {
        /// Requested entry count.
        entries: u128,
        /// Allowed entry count.
        budget: u128,
    },
    /// An operation that needs a Hopf algebra got a proper weak one.
    #[error("not Hopf: {0}")]
    NotHopf(String),
    /// An operation that needs a biconnected algebra got another one.
    #[error("not biconnected: {0}")]
    NotBiconnected(String),
    /// The connectedness test and its cross-check disagree.
    #[error("connectedness tests disagree: {0}")]
    ConnectednessMismatch(String),
    /// Eigenvalue clustering of a central element did not yield clean sectors.
    #[error("sector clustering failed: {0}")]
    Clustering(String),
    /// Fusion coefficients are not close to integers.
    #[error("fusion coefficients not integral: {0}")]
    Fusion(String),
    /// No positive idempotent was found in the integral space.
    #[error("Haar integral search failed (integral space dimension {dim}): {reason}")]
    Haar {
        /// Dimension of the two-sided integral space.
        dim: usize,
        /// What went wrong.
        reason: String,
    },
    /// A linear system that must be uniquely solvable is not.
    #[error("degenerate system: {0}")]
    Degenerate(String),
    /// A constructed element failed one of its defining checks.
    #[error("check failed: {0}")]
    Check(String),
}
