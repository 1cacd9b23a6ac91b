//! Errors raised while building and applying channels.

use mpdo::MpdoError;
use numeric_core::NumericError;
use thiserror::Error;
use wha_engine::EngineError;

/// Failures of channel construction, application and checks.
#[derive(Debug, Error)]
pub enum ChannelError {
    /// A numeric kernel routine failed.
    #[error(transparent)]
    Numeric(#[from] NumericError),
    /// An engine computation failed, including budget refusals.
    #[error(transparent)]
    Engine(#[from] EngineError),
    /// Building a state failed.
    #[error(transparent)]
    Mpdo(#[from] MpdoError),
    /// A map handed to [`crate::choi_from_action`] is not linear.
    #[error("map is not linear (residual {0:.3e})")]
    Nonlinear(f64),
    /// A Hopf-only construction was asked of a proper weak Hopf algebra.
    #[error("not Hopf: {0}")]
    NotHopf(String),
    /// A matrix that must be a density matrix is not one.
    #[error("not a state: {0}")]
    NotState(String),
    /// Dimensions of a channel and its argument disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An output could not be expressed in the expected operator basis.
    #[error("output outside the weighted operator span (residual {0:.3e})")]
    OutsideSpan(f64),
}

impl ChannelError {
    /// Whether this error is a refusal of the dense-entry budget.
    pub fn is_budget(&self) -> bool {
        match self {
            ChannelError::Engine(EngineError::Budget { .. }) => true,
            ChannelError::Mpdo(e) => e.is_budget(),
            _ => false,
        }
    }
}
