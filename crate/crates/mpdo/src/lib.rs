//! Matrix product density operators generated by a weak Hopf algebra.
//!
//! [`build_rho`] materializes `ρ_N(x) = ω(x)⁻¹ φ^{⊗N}(c_ω^{⊗N}Δ^{(N-1)}(x))`
//! densely. [`export_mpo_tensor`] gives the same states as closures of a
//! translation-invariant MPO tensor whose bond space is the algebra itself.
//! [`marginal_check`] compares marginals with the states of sliced elements.

pub mod chain;
pub mod dump;
pub mod error;
pub mod mpo;
pub mod state;

pub use chain::coproduct_chain;
pub use dump::{read_matrix, write_matrix, StateMetadata, LAYOUT};
pub use error::MpdoError;
pub use mpo::{export_mpo_tensor, MpoForm, MpoTensor};
pub use state::{
    build_rho, idempotence_transfer_residual, marginal_check, omega_right_slice, unnormalized_rho,
    weighted_factors, MarginalReport, MpdoState, StateInvariants, EIG_DIM_LIMIT, STATE_TOL,
};
