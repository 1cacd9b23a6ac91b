//! Center and counital subalgebras as null spaces of linear conditions.

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{null_space, tol, CMatrix};

use crate::structure::columns;

fn stack(blocks: &[CMatrix]) -> CMatrix {
    let cols = blocks.first().map(|b| b.cols()).unwrap_or(0);
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut r0 = 0;
    for b in blocks {
        out.set_block(r0, 0, b);
        r0 += b.rows();
    }
    out
}

fn to_elements(v: Vec<Vec<numeric_core::C64>>) -> Vec<AlgebraElement> {
    v.into_iter().map(AlgebraElement::new).collect()
}

/// Orthonormal basis of the center `Z(A)`.
pub fn center(spec: &WhaSpec) -> Vec<AlgebraElement> {
    let blocks: Vec<CMatrix> = (0..spec.n())
        .map(|i| {
            let e = spec.basis(i);
            &spec.right_mult_matrix(&e) - &spec.left_mult_matrix(&e)
        })
        .collect();
    to_elements(null_space(&stack(&blocks), tol::RANK))
}

/// Orthonormal bases of `A^L` and `A^R`.
///
/// `A^L` solves `Δ(x) = x1₁⊗1₂ = 1₁x⊗1₂` and `A^R` solves
/// `Δ(x) = 1₁⊗x1₂ = 1₁⊗1₂x`.
pub fn counital_subalgebras(spec: &WhaSpec) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
    let n = spec.n();
    let d1 = spec.coproduct(&spec.unit());
    let m = |i: usize, j: usize, k: usize| spec.mult_coeff(i, j, k);
    // Rows are (a, b) pairs of A⊗A, columns the coefficients of x.
    let build = |f: &dyn Fn(usize, usize, usize) -> numeric_core::C64| {
        CMatrix::from_fn(n * n, n, |row, k| {
            let (a, b) = (row / n, row % n);
            spec.coproduct_coeff(k, a, b) - f(a, b, k)
        })
    };
    let x1_l = build(&|a, b, k| (0..n).map(|c| m(k, c, a) * d1[(c, b)]).sum());
    let x1_r = build(&|a, b, k| (0..n).map(|c| m(c, k, a) * d1[(c, b)]).sum());
    let y_l = build(&|a, b, k| (0..n).map(|c| d1[(a, c)] * m(k, c, b)).sum());
    let y_r = build(&|a, b, k| (0..n).map(|c| d1[(a, c)] * m(c, k, b)).sum());
    let left = to_elements(null_space(&stack(&[x1_l, x1_r]), tol::RANK));
    let right = to_elements(null_space(&stack(&[y_l, y_r]), tol::RANK));
    (left, right)
}

/// Dimension of the intersection of two subspaces given by spanning sets.
pub fn intersection_dim(a: &[AlgebraElement], b: &[AlgebraElement]) -> usize {
    let mut all: Vec<AlgebraElement> = a.to_vec();
    all.extend_from_slice(b);
    if all.is_empty() {
        return 0;
    }
    let joint = columns(&all);
    let rank = joint.cols() - null_space(&joint, tol::RANK).len();
    a.len() + b.len() - rank
}

/// Distance of `x` from the span of an orthonormal basis.
pub fn distance_to_span(basis: &[AlgebraElement], x: &AlgebraElement) -> f64 {
    let mut r = x.clone();
    for b in basis {
        let proj: numeric_core::C64 = b
            .coeffs()
            .iter()
            .zip(x.coeffs())
            .map(|(u, v)| u.conj() * v)
            .sum();
        r.axpy(-proj, b);
    }
    r.max_abs()
}
