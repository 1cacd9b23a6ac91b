//! Weak Hopf algebra engine.
//!
//! Validates the axioms of a [`algebra_spec::WhaSpec`], builds the dual
//! algebra, decomposes both into sectors with fusion rules and
//! Frobenius–Perron dimensions, finds the Haar integrals and derives the
//! canonical elements Ω, ω, g, ĝ, ξ, c_ω and the map T. The residual suites
//! in [`identities`] check the identities these elements satisfy.

pub mod axioms;
pub mod distinguished;
pub mod dual;
pub mod elements;
pub mod error;
pub mod haar;
pub mod identities;
pub mod sectors;
pub mod structure;
pub mod subalg;

pub use axioms::{validate_axioms, validate_axioms_with, AxiomReport};
pub use distinguished::{distinguished_elements, radon_nikodym, DistinguishedElements};
pub use dual::dualize;
pub use error::EngineError;
pub use haar::{haar_integral, integral_space};
pub use identities::{core_invariants, hopf_specialization_report, identity_suite, IDENTITY_TOL};
pub use sectors::{sector_basics, sectors, SectorBasics, SectorData};
pub use structure::{budget_entries, check_budget, Structure, BUDGET_ENV, DEFAULT_BUDGET_ENTRIES};
pub use subalg::{center, counital_subalgebras};

/// `Δ^{(k)}(x)` as a dense coefficient tensor over `n^{k+1}` indices.
pub fn delta_power(
    spec: &algebra_spec::WhaSpec,
    x: &algebra_spec::AlgebraElement,
    k: usize,
) -> Result<Vec<numeric_core::C64>, EngineError> {
    Structure::new(spec).delta_power(x.coeffs(), k)
}
