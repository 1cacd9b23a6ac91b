//! The Haar integral: the positive idempotent two-sided integral.

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{c64, lstsq, min_eigenvalue, null_space, tol, CMatrix, C64};

use crate::elements::{apply_matrix, eps_s, eps_t};
use crate::error::EngineError;
use crate::structure::columns;

/// Largest two-sided integral space handled by the Newton fallback.
pub const MAX_NEWTON_DIM: usize = 3;

/// Basis of the two-sided integrals `xh = ε_t(x)h`, `hx = hε_s(x)`.
pub fn integral_space(spec: &WhaSpec) -> Vec<AlgebraElement> {
    let n = spec.n();
    let mut big = CMatrix::zeros(2 * n * n, n);
    for i in 0..n {
        let x = spec.basis(i);
        let l = &spec.left_mult_matrix(&x) - &spec.left_mult_matrix(&eps_t(spec, &x));
        let r = &spec.right_mult_matrix(&x) - &spec.right_mult_matrix(&eps_s(spec, &x));
        big.set_block(2 * i * n, 0, &l);
        big.set_block((2 * i + 1) * n, 0, &r);
    }
    null_space(&big, tol::RANK)
        .into_iter()
        .map(AlgebraElement::new)
        .collect()
}

/// Residuals of the defining properties of a Haar integral candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarChecks {
    /// `‖h² − h‖`.
    pub idempotent: f64,
    /// `‖h* − h‖`.
    pub self_adjoint: f64,
    /// Smallest eigenvalue of `φ(h)`.
    pub min_eigenvalue: f64,
    /// `‖S(h) − h‖`.
    pub antipode_invariant: f64,
    /// `‖ε_t(h) − 1‖`.
    pub normalization: f64,
}

impl HaarChecks {
    /// All residuals within [`tol::STRUCTURAL`] and `φ(h)` PSD within [`tol::PSD`].
    pub fn pass(&self) -> bool {
        self.idempotent <= tol::STRUCTURAL
            && self.self_adjoint <= tol::STRUCTURAL
            && self.min_eigenvalue >= -tol::PSD
            && self.antipode_invariant <= tol::STRUCTURAL
            && self.normalization <= tol::STRUCTURAL
    }
}

/// Evaluate [`HaarChecks`] for a candidate.
pub fn haar_checks(spec: &WhaSpec, h: &AlgebraElement) -> Result<HaarChecks, EngineError> {
    let p = spec.phi(h);
    let min_eig = min_eigenvalue(&p.hermitian_part())?;
    Ok(HaarChecks {
        idempotent: spec.mul(h, h).max_abs_diff(h),
        self_adjoint: spec.star(h).max_abs_diff(h),
        min_eigenvalue: min_eig,
        antipode_invariant: apply_matrix(spec.antipode_matrix(), h).max_abs_diff(h),
        normalization: eps_t(spec, h).max_abs_diff(&spec.unit()),
    })
}

/// The Haar integral `h`.
///
/// The normalization `ε_t(h) = 1` is solved linearly on the integral space.
/// If the result fails [`HaarChecks`] and the space has dimension at most
/// [`MAX_NEWTON_DIM`], [`refine_haar`] is run from it.
pub fn haar_integral(spec: &WhaSpec) -> Result<AlgebraElement, EngineError> {
    let space = integral_space(spec);
    let dim = space.len();
    if dim == 0 {
        return Err(EngineError::Haar {
            dim,
            reason: "no two-sided integrals".into(),
        });
    }
    let unit = spec.unit();
    let et = columns(&space.iter().map(|v| eps_t(spec, v)).collect::<Vec<_>>());
    let rhs = CMatrix::from_vec(spec.n(), 1, unit.coeffs().to_vec())?;
    let sol = lstsq(&et, &rhs)?;
    let h = combine(&space, &sol.solution.column(0));
    if haar_checks(spec, &h)?.pass() {
        return Ok(h);
    }
    if dim > MAX_NEWTON_DIM {
        return Err(EngineError::Haar {
            dim,
            reason: "normalized integral is not a positive idempotent".into(),
        });
    }
    let refined = refine_haar(spec, &space, &h)?;
    let checks = haar_checks(spec, &refined)?;
    if checks.pass() {
        Ok(refined)
    } else {
        Err(EngineError::Haar {
            dim,
            reason: format!("Newton refinement did not converge: {checks:?}"),
        })
    }
}

fn combine(space: &[AlgebraElement], c: &[C64]) -> AlgebraElement {
    let mut h = AlgebraElement::zeros(space[0].len());
    for (v, &ci) in space.iter().zip(c) {
        h.axpy(ci, v);
    }
    h
}

fn push_complex(out: &mut Vec<f64>, v: &[C64]) {
    out.extend(v.iter().map(|z| z.re));
    out.extend(v.iter().map(|z| z.im));
}

/// Gauss–Newton search for `h` in `span(space)` with `h² = h`, `h* = h` and
/// `ε_t(h) = 1`, starting from `start`.
pub fn refine_haar(
    spec: &WhaSpec,
    space: &[AlgebraElement],
    start: &AlgebraElement,
) -> Result<AlgebraElement, EngineError> {
    let k = space.len();
    let unit = spec.unit();
    // Coordinates of the start point in the (orthonormal) space basis.
    let mut c: Vec<C64> = space
        .iter()
        .map(|v| {
            v.coeffs()
                .iter()
                .zip(start.coeffs())
                .map(|(a, b)| a.conj() * b)
                .sum()
        })
        .collect();
    let residual = |h: &AlgebraElement| -> Vec<f64> {
        let mut r = Vec::new();
        push_complex(&mut r, (&spec.mul(h, h) - h).coeffs());
        push_complex(&mut r, (h - &spec.star(h)).coeffs());
        push_complex(&mut r, (&eps_t(spec, h) - &unit).coeffs());
        r
    };
    for _ in 0..50 {
        let h = combine(space, &c);
        let f = residual(&h);
        let norm = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if norm < 1e-14 {
            break;
        }
        let mut jac_cols: Vec<Vec<f64>> = Vec::with_capacity(2 * k);
        for phase in [c64(1.0, 0.0), c64(0.0, 1.0)] {
            for v in space {
                let dlt = v.scale(phase);
                let mut col = Vec::new();
                let lin = &(&spec.mul(&h, &dlt) + &spec.mul(&dlt, &h)) - &dlt;
                push_complex(&mut col, lin.coeffs());
                push_complex(&mut col, (&dlt - &spec.star(&dlt)).coeffs());
                push_complex(&mut col, eps_t(spec, &dlt).coeffs());
                jac_cols.push(col);
            }
        }
        let rows = f.len();
        let jac = CMatrix::from_fn(rows, 2 * k, |r, cidx| c64(jac_cols[cidx][r], 0.0));
        let rhs = CMatrix::from_fn(rows, 1, |r, _| c64(f[r], 0.0));
        let step = lstsq(&jac, &rhs)?.solution.column(0);
        for j in 0..k {
            c[j] -= c64(step[j].re, step[k + j].re);
        }
    }
    Ok(combine(space, &c))
}
