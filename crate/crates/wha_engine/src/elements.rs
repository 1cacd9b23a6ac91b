//! Element-level helpers: spectral functions through the representation and
//! the counital maps.

use algebra_spec::{AlgebraElement, Functional, WhaSpec};
use numeric_core::{c64, psd_sqrt, pullback, solve_linear, tol, CMatrix, C64};

use crate::error::EngineError;

/// Pull a matrix in the image of `φ` back to algebra coefficients.
pub fn pull(spec: &WhaSpec, m: &CMatrix) -> Result<AlgebraElement, EngineError> {
    Ok(AlgebraElement::new(pullback(spec.rep(), m, tol::PULLBACK)?))
}

/// Inverse of an invertible element, computed as `φ⁻¹(φ(x)⁻¹)`.
pub fn inverse(spec: &WhaSpec, x: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
    let m = spec.phi(x);
    let id = CMatrix::identity(m.rows());
    let inv = solve_linear(&m, &id)?;
    let res = m.matmul(&inv).max_abs_diff(&id);
    if res > tol::PULLBACK {
        return Err(EngineError::Degenerate(format!(
            "element is not invertible (residual {res:.3e})"
        )));
    }
    pull(spec, &inv)
}

/// Positive square root of a positive element, computed in the representation.
pub fn sqrt(spec: &WhaSpec, x: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
    let m = spec.phi(x);
    let dev = m.hermitian_deviation();
    if dev > tol::STRUCTURAL * m.max_abs().max(1.0) {
        return Err(EngineError::Check(format!(
            "square root of a non-Hermitian element (deviation {dev:.3e})"
        )));
    }
    pull(spec, &psd_sqrt(&m)?)
}

/// Target counital map `ε_t(x) = ε(1₁x)1₂`.
pub fn eps_t(spec: &WhaSpec, x: &AlgebraElement) -> AlgebraElement {
    let n = spec.n();
    let d1 = spec.coproduct(&spec.unit());
    let eps = spec.counit();
    let w: Vec<C64> = (0..n)
        .map(|a| eps.apply(&spec.mul(&spec.basis(a), x)))
        .collect();
    AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| d1[(a, b)] * w[a]).sum())
            .collect(),
    )
}

/// Source counital map `ε_s(x) = 1₁ε(x1₂)`.
pub fn eps_s(spec: &WhaSpec, x: &AlgebraElement) -> AlgebraElement {
    let n = spec.n();
    let d1 = spec.coproduct(&spec.unit());
    let eps = spec.counit();
    let w: Vec<C64> = (0..n)
        .map(|b| eps.apply(&spec.mul(x, &spec.basis(b))))
        .collect();
    AlgebraElement::new(
        (0..n)
            .map(|a| (0..n).map(|b| d1[(a, b)] * w[b]).sum())
            .collect(),
    )
}

/// Inverse of the antipode matrix.
pub fn antipode_inverse(spec: &WhaSpec) -> Result<CMatrix, EngineError> {
    let s = spec.antipode_matrix();
    let id = CMatrix::identity(spec.n());
    let inv = solve_linear(s, &id)?;
    let res = s.matmul(&inv).max_abs_diff(&id);
    if res > tol::PULLBACK {
        return Err(EngineError::Degenerate(format!(
            "antipode is not invertible (residual {res:.3e})"
        )));
    }
    Ok(inv)
}

/// Apply a coefficient matrix to an element.
pub fn apply_matrix(m: &CMatrix, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::new(m.matvec(x.coeffs()))
}

/// Pull a functional back along a linear map: `(f∘m)_j = Σ_i f_i m[i][j]`.
pub fn compose_functional(f: &Functional, m: &CMatrix) -> Functional {
    Functional::new(
        (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| f[i] * m[(i, j)]).sum())
            .collect(),
    )
}

/// `(*⊗*)(X)` for a coefficient matrix over `A⊗A`.
pub fn star2(spec: &WhaSpec, x: &CMatrix) -> CMatrix {
    let st = spec.star_matrix();
    st.matmul(&x.conj()).matmul(&st.transpose())
}

/// Real scalar as a complex number.
pub fn re(x: f64) -> C64 {
    c64(x, 0.0)
}
