//! Weak Hopf algebras given by structure constants.
//!
//! A [`WhaSpec`] stores an algebra of dimension `n` on a fixed basis
//! `e_0, …, e_{n-1}` through the following data:
//!
//! * multiplication constants `M[i][j][k]` with `e_i e_j = Σ_k M[i][j][k] e_k`;
//! * the unit and the counit as coefficient vectors;
//! * the star as an `n×n` matrix `St` with `x* = St · conj(x)`;
//! * coproduct constants `D[k][i][j]` with `Δ(e_k) = Σ_{ij} D[k][i][j] e_i ⊗ e_j`;
//! * the antipode as an `n×n` matrix acting on coefficient vectors;
//! * a faithful *-representation `φ(e_i)` on `ℂ^d`.
//!
//! The crate also provides the canonical JSON interchange format and builders
//! for group algebras, function algebras, the Kac–Paljutkin algebra, the
//! Lee–Yang algebra and direct sums.

pub mod element;
pub mod error;
pub mod group;
pub mod json;
pub mod presets;
pub mod spec;

pub use element::{AlgebraElement, Functional};
pub use error::SpecError;
pub use group::GroupTable;
pub use json::{from_json_str, load_spec, save_spec, to_canonical_json};
pub use presets::{
    build_function_algebra, build_group_algebra, build_group_algebra_regular, build_kac_paljutkin,
    build_lee_yang, direct_sum, lee_yang_mpo_tensor, lee_yang_zeta, z2_sigma_z,
};
pub use spec::{SpecParts, WhaSpec};
