//! Errors raised while planning and running circuits.

use channels::ChannelError;
use mpdo::MpdoError;
use numeric_core::NumericError;
use thiserror::Error;
use wha_engine::EngineError;

/// Failures of circuit planning, execution and verification.
#[derive(Debug, Error)]
pub enum CircuitError {
    /// A numeric kernel routine failed.
    #[error(transparent)]
    Numeric(#[from] NumericError),
    /// An engine computation failed, including budget refusals.
    #[error(transparent)]
    Engine(#[from] EngineError),
    /// Building a state failed.
    #[error(transparent)]
    Mpdo(#[from] MpdoError),
    /// Building or applying a channel failed.
    #[error(transparent)]
    Channel(#[from] ChannelError),
    /// The element is not supported for a proper weak Hopf algebra.
    #[error("unsupported element: {0}")]
    UnsupportedElement(String),
    /// The number of sites or the input dimension is wrong.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// The circuit output is not a density matrix.
    #[error("output is not a state: {0}")]
    NotState(String),
}

impl CircuitError {
    /// Whether this error is a refusal of the dense-entry budget.
    pub fn is_budget(&self) -> bool {
        match self {
            CircuitError::Engine(EngineError::Budget { .. }) => true,
            CircuitError::Mpdo(e) => e.is_budget(),
            CircuitError::Channel(e) => e.is_budget(),
            _ => false,
        }
    }
}
