//! Errors raised while building states and tensors.

use numeric_core::NumericError;
use thiserror::Error;
use wha_engine::EngineError;

/// Failures of MPDO construction and checks.
#[derive(Debug, Error)]
pub enum MpdoError {
    /// A numeric kernel routine failed.
    #[error(transparent)]
    Numeric(#[from] NumericError),
    /// An engine computation failed, including budget refusals.
    #[error(transparent)]
    Engine(#[from] EngineError),
    /// The generating element is not positive or has `ω(x) = 0`.
    #[error("generating element is not positive: {0}")]
    NotPositive(String),
    /// A request that needs more sites than given.
    #[error("invalid site count: {0}")]
    Sites(String),
    /// A built state violates its invariants.
    #[error("state invariant violated: {0}")]
    Invariant(String),
    /// Reading or writing a dump failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl MpdoError {
    /// Whether this error is a refusal of the dense-entry budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, MpdoError::Engine(EngineError::Budget { .. }))
    }
}
