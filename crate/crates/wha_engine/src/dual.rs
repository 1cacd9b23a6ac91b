//! The dual weak Hopf algebra with a faithful *-representation.

use algebra_spec::{SpecParts, WhaSpec};
use numeric_core::{c64, psd_inverse, psd_sqrt, CMatrix};

use crate::error::EngineError;

/// Dual algebra `A*` on the dual basis `e^i`.
///
/// Its product is the transposed coproduct, its coproduct the transposed
/// product, `1_{A*} = ε`, `ε_{A*} = 1`, `S_{A*} = Sᵀ` and
/// `f*(x) = conj(f(S(x)*))`. The representation is the left regular one,
/// made unitary by the inner product `⟨f, g⟩ = Tr(L_{f*g})` of the regular
/// trace.
pub fn dualize(spec: &WhaSpec) -> Result<WhaSpec, EngineError> {
    let n = spec.n();
    let mut mult = vec![c64(0.0, 0.0); n * n * n];
    let mut coproduct = vec![c64(0.0, 0.0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult[(i * n + j) * n + k] = spec.coproduct_coeff(k, i, j);
                coproduct[(k * n + i) * n + j] = spec.mult_coeff(i, j, k);
            }
        }
    }
    let s = spec.antipode_matrix();
    let st = spec.star_matrix();
    let star = CMatrix::from_fn(n, n, |j, k| {
        (0..n).map(|l| st[(k, l)].conj() * s[(l, j)]).sum()
    });
    let labels = spec.labels().iter().map(|l| format!("^{l}")).collect();
    let unit = spec.counit().into_coeffs();
    let counit = spec.unit().into_coeffs();

    // Left regular representation: L_i[k][j] = coefficient of e^k in e^i e^j.
    let left: Vec<CMatrix> = (0..n)
        .map(|i| CMatrix::from_fn(n, n, |k, j| mult[(i * n + j) * n + k]))
        .collect();
    let trace: Vec<_> = (0..n).map(|i| left[i].trace()).collect();
    // Gram matrix G[i][j] = tr((e^i)* e^j); (e^i)* = Σ_r star[r][i] e^r.
    let gram = CMatrix::from_fn(n, n, |i, j| {
        let mut acc = c64(0.0, 0.0);
        for r in 0..n {
            let sr = star[(r, i)];
            if sr == c64(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                acc += sr * mult[(r * n + j) * n + k] * trace[k];
            }
        }
        acc
    })
    .hermitian_part();
    let g_half = psd_sqrt(&gram)?;
    let g_half_inv = psd_inverse(&g_half).map_err(|_| {
        EngineError::Check("regular trace of the dual algebra is degenerate".into())
    })?;
    let rep: Vec<CMatrix> = left
        .iter()
        .map(|l| g_half.matmul(l).matmul(&g_half_inv))
        .collect();
    Ok(WhaSpec::new(SpecParts {
        labels,
        mult,
        unit,
        star,
        coproduct,
        counit,
        antipode: s.transpose(),
        rep_dim: n,
        rep,
    })?)
}
