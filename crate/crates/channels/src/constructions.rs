//! The coarse-graining, fine-graining and gluing channels of a weak Hopf algebra.

use algebra_spec::{AlgebraElement, WhaSpec};
use mpdo::weighted_factors;
use numeric_core::{c64, is_psd, min_eigenvalue, tol, CMatrix};
use wha_engine::elements::apply_matrix;
use wha_engine::{delta_power, DistinguishedElements};

use crate::channel::{Channel, Term};
use crate::error::ChannelError;

/// `φ^{⊗2}(Y)` for a coefficient matrix `Y` over `A⊗A`.
pub fn phi2(spec: &WhaSpec, y: &CMatrix) -> CMatrix {
    let n = spec.n();
    let d = spec.rep_dim();
    let mut out = CMatrix::zeros(d * d, d * d);
    for a in 0..n {
        for b in 0..n {
            let c = y[(a, b)];
            if c != c64(0.0, 0.0) {
                spec.rep()[a].kron_accumulate(&spec.rep()[b], c, &mut out);
            }
        }
    }
    out
}

/// `Δ²(x)` as `n³` coefficients indexed `(a·n + b)·n + c`.
fn delta2(spec: &WhaSpec, x: &AlgebraElement) -> Result<Vec<numeric_core::C64>, ChannelError> {
    Ok(delta_power(spec, x, 2)?)
}

/// Fail unless `x` is positive with `ω(x) > 0`.
pub fn check_positive(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
) -> Result<f64, ChannelError> {
    let px = spec.phi(x);
    if px.hermitian_deviation() > tol::HERMITIAN
        || min_eigenvalue(&px.hermitian_part())? < -tol::PSD
    {
        return Err(ChannelError::Mpdo(mpdo::MpdoError::NotPositive(
            "φ(x) is not PSD".into(),
        )));
    }
    let w = d.omega.apply(x).re;
    if w <= tol::PSD {
        return Err(ChannelError::Mpdo(mpdo::MpdoError::NotPositive(format!(
            "ω(x) = {w:.3e}"
        ))));
    }
    Ok(w)
}

/// `‖Δ(1) − 1⊗1‖_max`, zero exactly for Hopf algebras.
pub fn unit_coproduct_defect(spec: &WhaSpec) -> f64 {
    let u = spec.unit();
    let du = spec.coproduct(&u);
    let n = spec.n();
    let one = CMatrix::from_fn(n, n, |a, b| u[a] * u[b]);
    du.max_abs_diff(&one)
}

/// Coarse-graining `𝒯: End(V) → End(V⊗V)`,
/// `𝒯(X) = tr(φ(ξT(Ω₍₁₎))X) φ(c_ωΩ₍₂₎)⊗φ(c_ωΩ₍₃₎)`.
pub fn coarse_grain(spec: &WhaSpec, d: &DistinguishedElements) -> Result<Channel, ChannelError> {
    let n = spec.n();
    let dim = spec.rep_dim();
    let w = weighted_factors(spec, d);
    let om3 = delta2(spec, &d.big_omega)?;
    let mut terms = Vec::with_capacity(n);
    for a in 0..n {
        let mut g = CMatrix::zeros(dim * dim, dim * dim);
        for k in 0..n {
            let tak = d.t_matrix[(a, k)];
            if tak == c64(0.0, 0.0) {
                continue;
            }
            for b in 0..n {
                for c in 0..n {
                    let v = om3[(k * n + b) * n + c];
                    if v != c64(0.0, 0.0) {
                        w[b].kron_accumulate(&w[c], tak * v, &mut g);
                    }
                }
            }
        }
        let f = spec.phi(&spec.mul(&d.xi, &spec.basis(a)));
        terms.push(Term { f, g });
    }
    Channel::from_terms("T", dim, dim * dim, terms)
}

/// Fine-graining `𝒮: End(V⊗V) → End(V)`,
/// `𝒮(X) = tr(φ^{⊗2}(Δ(ξT(Ω₍₁₎)))X) φ(c_ωΩ₍₂₎) + tr(P^⊥X) ρ₀`
/// with `P = φ^{⊗2}(Δ(1))`.
pub fn fine_grain(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    rho0: &CMatrix,
) -> Result<Channel, ChannelError> {
    let n = spec.n();
    let dim = spec.rep_dim();
    if (rho0.rows(), rho0.cols()) != (dim, dim)
        || rho0.hermitian_deviation() > tol::HERMITIAN
        || (rho0.trace() - 1.0).norm() > tol::STRUCTURAL
        || !is_psd(&rho0.hermitian_part(), tol::PSD)?
    {
        return Err(ChannelError::NotState(format!(
            "ρ₀ must be a {dim}x{dim} density matrix"
        )));
    }
    let w = weighted_factors(spec, d);
    let dom = spec.coproduct(&d.big_omega);
    let mut terms = Vec::with_capacity(n + 1);
    for a in 0..n {
        let mut g = CMatrix::zeros(dim, dim);
        for k in 0..n {
            let tak = d.t_matrix[(a, k)];
            if tak == c64(0.0, 0.0) {
                continue;
            }
            for b in 0..n {
                let v = dom[(k, b)];
                if v != c64(0.0, 0.0) {
                    g.axpy(tak * v, &w[b]);
                }
            }
        }
        let y = spec.mul(&d.xi, &spec.basis(a));
        terms.push(Term {
            f: phi2(spec, &spec.coproduct(&y)),
            g,
        });
    }
    let p = phi2(spec, &spec.coproduct(&spec.unit()));
    terms.push(Term {
        f: &CMatrix::identity(dim * dim) - &p,
        g: rho0.clone(),
    });
    Channel::from_terms("S", dim * dim, dim, terms)
}

/// `X⊗Y ↦ norm⁻¹ Σ Δ²(x)_{abc} tr(L_a X) tr(R_c Y) φ(c_ω e_b)` on `End(V⊗V) → End(V)`.
fn merge_channel(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    label: &str,
    x: &AlgebraElement,
    norm: f64,
    left: impl Fn(usize) -> CMatrix,
    right: impl Fn(usize) -> CMatrix,
) -> Result<Channel, ChannelError> {
    let n = spec.n();
    let dim = spec.rep_dim();
    let w = weighted_factors(spec, d);
    let dx = delta2(spec, x)?;
    let lefts: Vec<CMatrix> = (0..n).map(&left).collect();
    let rights: Vec<CMatrix> = (0..n).map(&right).collect();
    let mut terms = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let mut g = CMatrix::zeros(dim, dim);
            for b in 0..n {
                let v = dx[(a * n + b) * n + c];
                if v != c64(0.0, 0.0) {
                    g.axpy(v, &w[b]);
                }
            }
            if g.max_abs() == 0.0 {
                continue;
            }
            terms.push(Term {
                f: lefts[a].kron(&rights[c]),
                g: g.scale_real(1.0 / norm),
            });
        }
    }
    Channel::from_terms(label, dim * dim, dim, terms)
}

/// Hopf gluing map `𝒢_x = 𝒯∘𝒢` on `End(V⊗V)` with
/// `𝒢(X⊗Y) = ω(x)⁻¹ tr(φ(S(x₍₁₎))X) φ(c_ωx₍₂₎) tr(φ(S(x₍₃₎))Y)`.
pub fn glue_hopf(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
) -> Result<Channel, ChannelError> {
    let defect = unit_coproduct_defect(spec);
    if defect > tol::STRUCTURAL {
        return Err(ChannelError::NotHopf(format!(
            "Δ(1) differs from 1⊗1 by {defect:.3e}; use glue_trivial"
        )));
    }
    let wx = check_positive(spec, d, x)?;
    let s = spec.antipode_matrix();
    let sphi = |i: usize| spec.phi(&apply_matrix(s, &spec.basis(i)));
    let merge = merge_channel(spec, d, "G", x, wx, sphi, sphi)?;
    let mut glued = Channel::compose(&coarse_grain(spec, d)?, &merge)?;
    glued.label = "G_x".into();
    Ok(glued)
}

/// Trivial-sector gluing map `𝒢₁ = 𝒯∘𝒢` on `End(V⊗V)` with
/// `𝒢(X⊗Y) = 𝒟⁻² tr(φ(S(1₍₁₎)ξ_L)X) φ(c_ω1₍₂₎) tr(φ(ξ_RS(1₍₃₎))Y)`.
pub fn glue_trivial(spec: &WhaSpec, d: &DistinguishedElements) -> Result<Channel, ChannelError> {
    let s = spec.antipode_matrix();
    let left = |i: usize| spec.phi(&spec.mul(&apply_matrix(s, &spec.basis(i)), &d.xi_l));
    let right = |i: usize| spec.phi(&spec.mul(&d.xi_r, &apply_matrix(s, &spec.basis(i))));
    let merge = merge_channel(spec, d, "G", &spec.unit(), d.d2, left, right)?;
    let mut glued = Channel::compose(&coarse_grain(spec, d)?, &merge)?;
    glued.label = "G_1".into();
    Ok(glued)
}
