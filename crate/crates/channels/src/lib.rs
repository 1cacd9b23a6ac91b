//! Quantum channels of the renormalization fixed points `ρ_N(x)`.
//!
//! Every channel here has the measure-and-prepare form
//! `X ↦ Σ_k tr(F_k X) G_k`; the Choi matrix `Σ_k F_kᵀ⊗G_k` and Kraus
//! operators are derived on demand. [`coarse_grain`] and [`fine_grain`] map
//! between `ρ₁(x)` and `ρ₂(x)`, [`glue_hopf`] and [`glue_trivial`] merge two
//! blocks into one longer state, and [`no_gluing_witness`] measures why no
//! such map exists for general elements of a proper weak Hopf algebra.

pub mod channel;
pub mod constructions;
pub mod error;
pub mod verify;

pub use channel::{
    apply_kraus, choi_from_action, kraus_from_choi, Channel, CptpReport, Term, CHOI_EIG_LIMIT,
    CPTP_TOL,
};
pub use constructions::{
    coarse_grain, fine_grain, glue_hopf, glue_trivial, phi2, unit_coproduct_defect,
};
pub use error::ChannelError;
pub use verify::{
    gluing_check, no_gluing_witness, rfp_check, state_distance, two_site_coefficient_map,
    GlueMethod, GlueReport, GluingChecker, NoGluingWitness, RfpReport,
};
