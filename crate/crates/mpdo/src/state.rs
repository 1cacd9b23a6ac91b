//! The states `ρ_N(x) = ω(x)⁻¹ φ^{⊗N}(c_ω^{⊗N} Δ^{(N-1)}(x))`.

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{min_eigenvalue, partial_trace, permute_sites, tol, trace_norm, CMatrix};
use serde::{Deserialize, Serialize};
use wha_engine::{DistinguishedElements, Structure};

use crate::chain::coproduct_chain;
use crate::error::MpdoError;

/// Largest state dimension for which invariants include an eigen-solve.
pub const EIG_DIM_LIMIT: usize = 1024;

/// Tolerance on the Hermiticity, trace and PSD invariants of a state.
pub const STATE_TOL: f64 = 1e-10;

/// A dense `N`-site state `ρ_N(x)`.
#[derive(Clone, Debug)]
pub struct MpdoState {
    /// Number of sites.
    pub n_sites: usize,
    /// Description of the generating element.
    pub x_label: String,
    /// The density matrix of dimension `site_dim^N`.
    pub rho: CMatrix,
    /// `ω(x)`.
    pub norm_omega: f64,
    /// Dimension of one site.
    pub site_dim: usize,
}

/// Residuals of the state invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateInvariants {
    /// `‖ρ − ρ†‖_max`.
    pub hermitian: f64,
    /// `|tr ρ − 1|`.
    pub trace: f64,
    /// Smallest eigenvalue, when the dimension is at most [`EIG_DIM_LIMIT`].
    pub min_eigenvalue: Option<f64>,
}

impl StateInvariants {
    /// All residuals within [`STATE_TOL`]; a skipped eigen-solve counts as a pass.
    pub fn pass(&self) -> bool {
        self.hermitian <= STATE_TOL
            && self.trace <= STATE_TOL
            && self.min_eigenvalue.map_or(true, |m| m >= -STATE_TOL)
    }
}

impl MpdoState {
    /// Replace the description of the generating element.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.x_label = label.into();
        self
    }

    /// Dimensions of the sites, left to right.
    pub fn site_dims(&self) -> Vec<usize> {
        vec![self.site_dim; self.n_sites]
    }

    /// Evaluate the state invariants.
    pub fn invariants(&self) -> Result<StateInvariants, MpdoError> {
        let min = if self.rho.rows() <= EIG_DIM_LIMIT {
            Some(min_eigenvalue(&self.rho.hermitian_part())?)
        } else {
            None
        };
        Ok(StateInvariants {
            hermitian: self.rho.hermitian_deviation(),
            trace: (self.rho.trace() - 1.0).norm(),
            min_eigenvalue: min,
        })
    }

    /// The state with every site moved one place to the left, cyclically.
    pub fn cyclic_shift(&self) -> Result<CMatrix, MpdoError> {
        let perm: Vec<usize> = (0..self.n_sites).map(|k| (k + 1) % self.n_sites).collect();
        Ok(permute_sites(&self.rho, &self.site_dims(), &perm)?)
    }

    /// `‖shift(ρ) − ρ‖_max` for the cyclic site shift.
    pub fn cyclic_shift_residual(&self) -> Result<f64, MpdoError> {
        Ok(self.cyclic_shift()?.max_abs_diff(&self.rho))
    }

    /// Trace out the last site.
    pub fn trace_last(&self) -> Result<CMatrix, MpdoError> {
        if self.n_sites < 2 {
            return Err(MpdoError::Sites("tracing out a site needs N ≥ 2".into()));
        }
        let keep: Vec<usize> = (0..self.n_sites - 1).collect();
        Ok(partial_trace(&self.rho, &self.site_dims(), &keep)?)
    }
}

/// `φ(c_ω e_i)` for every basis element.
pub fn weighted_factors(spec: &WhaSpec, d: &DistinguishedElements) -> Vec<CMatrix> {
    (0..spec.n())
        .map(|i| spec.phi(&spec.mul(&d.c_omega, &spec.basis(i))))
        .collect()
}

/// `φ^{⊗N}(c_ω^{⊗N} Δ^{(N-1)}(x))` without normalization or positivity checks.
pub fn unnormalized_rho(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n_sites: usize,
) -> Result<CMatrix, MpdoError> {
    coproduct_chain(
        &Structure::new(spec),
        &weighted_factors(spec, d),
        x.coeffs(),
        n_sites,
    )
}

/// Build `ρ_N(x)` for a positive nonzero `x`.
///
/// Positivity means `φ(x) ≥ 0` within [`tol::PSD`] and `ω(x) > 0`. The state
/// is checked for Hermiticity and unit trace; the spectrum is checked when
/// the dimension is at most [`EIG_DIM_LIMIT`].
pub fn build_rho(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n_sites: usize,
) -> Result<MpdoState, MpdoError> {
    let px = spec.phi(x);
    if px.hermitian_deviation() > tol::HERMITIAN {
        return Err(MpdoError::NotPositive(format!(
            "φ(x) is not Hermitian (deviation {:.3e})",
            px.hermitian_deviation()
        )));
    }
    let min = min_eigenvalue(&px.hermitian_part())?;
    if min < -tol::PSD {
        return Err(MpdoError::NotPositive(format!(
            "φ(x) has eigenvalue {min:.3e}"
        )));
    }
    let w = d.omega.apply(x);
    if w.re <= tol::PSD {
        return Err(MpdoError::NotPositive(format!("ω(x) = {:.3e}", w.re)));
    }
    let raw = unnormalized_rho(spec, d, x, n_sites)?;
    let state = MpdoState {
        n_sites,
        x_label: "x".into(),
        rho: raw.scale_real(1.0 / w.re),
        norm_omega: w.re,
        site_dim: spec.rep_dim(),
    };
    let inv = state.invariants()?;
    if !inv.pass() {
        return Err(MpdoError::Invariant(format!("{inv:?}")));
    }
    Ok(state)
}

/// `(id⊗ω)Δ(x) = x₍₁₎ω(x₍₂₎)`.
pub fn omega_right_slice(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
) -> AlgebraElement {
    let dx = spec.coproduct(x);
    let n = spec.n();
    let w: Vec<_> = (0..n).map(|j| d.omega.apply(&spec.basis(j))).collect();
    AlgebraElement::new(
        (0..n)
            .map(|i| (0..n).map(|j| dx[(i, j)] * w[j]).sum())
            .collect(),
    )
}

/// Result of [`marginal_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginalReport {
    /// `‖tr_last ρ_N(x) − s·ρ_{N−1}(x₍₁₎ω(x₍₂₎))‖₁` with the normalized slice.
    pub residual: f64,
    /// The forced normalization `s = ω(x₍₁₎ω(x₍₂₎))/ω(x)`, equal to one by idempotence of `ω`.
    pub normalization: f64,
    /// For `x = Ω`: the same residual with the slice replaced by `ξ⁻¹`.
    pub xi_residual: Option<f64>,
}

/// Compare the marginal of `ρ_N(x)` on the first `N−1` sites with the state
/// generated by `x₍₁₎ω(x₍₂₎)`.
///
/// When `x` equals `Ω`, the slice is also compared with `ξ⁻¹ = ω(Ω₍₁₎)Ω₍₂₎`,
/// which agrees with it because `Ω` is cocentral.
pub fn marginal_check(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n_sites: usize,
) -> Result<MarginalReport, MpdoError> {
    if n_sites < 2 {
        return Err(MpdoError::Sites("marginal_check needs N ≥ 2".into()));
    }
    let state = build_rho(spec, d, x, n_sites)?;
    let marginal = state.trace_last()?;
    let compare = |slice: &AlgebraElement| -> Result<(f64, f64), MpdoError> {
        let w = d.omega.apply(slice).re;
        let s = w / state.norm_omega;
        let raw = unnormalized_rho(spec, d, slice, n_sites - 1)?;
        // s·ρ_{N−1}(slice) = raw / ω(x)
        let expected = raw.scale_real(1.0 / state.norm_omega);
        Ok((trace_norm(&(&marginal - &expected).hermitian_part())?, s))
    };
    let (residual, normalization) = compare(&omega_right_slice(spec, d, x))?;
    let xi_residual = if x.max_abs_diff(&d.big_omega) <= tol::STRUCTURAL {
        Some(compare(&d.xi_inv)?.0)
    } else {
        None
    };
    Ok(MarginalReport {
        residual,
        normalization,
        xi_residual,
    })
}

/// `max_i |(ω⊗ω)Δ(e_i) − ω(e_i)|` over the basis.
pub fn idempotence_transfer_residual(spec: &WhaSpec, d: &DistinguishedElements) -> f64 {
    let n = spec.n();
    let w: Vec<_> = (0..n).map(|j| d.omega.apply(&spec.basis(j))).collect();
    (0..n)
        .map(|i| {
            let dx = spec.coproduct(&spec.basis(i));
            let mut s = numeric_core::c64(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    s += dx[(a, b)] * w[a] * w[b];
                }
            }
            (s - w[i]).norm()
        })
        .fold(0.0, f64::max)
}
