//! Site-by-site evaluation of `Σ Δ^{(N-1)}(x)_{i₁…i_N} F_{i₁}⊗…⊗F_{i_N}`.

use numeric_core::{CMatrix, C64};
use wha_engine::{check_budget, Structure};

use crate::error::MpdoError;

/// `Σ_{i₁…i_N} Δ^{(N-1)}(x)_{i₁…i_N} F_{i₁}⊗…⊗F_{i_N}` for square site
/// factors `F_i`, one per basis element.
///
/// Coassociativity lets the sum peel off one site at a time: with
/// `V⁽¹⁾_m = F_m` and `V⁽ᵏ⁺¹⁾_m = Σ D[m,i,m'] F_i⊗V⁽ᵏ⁾_{m'}`, the result is
/// `Σ_k x_k V⁽ᴺ⁾_k`. The last level is formed only for the combination `x`,
/// so memory stays at `n` blocks of `N−1` sites.
pub fn coproduct_chain(
    structure: &Structure,
    factors: &[CMatrix],
    x: &[C64],
    sites: usize,
) -> Result<CMatrix, MpdoError> {
    let n = structure.n();
    if sites == 0 {
        return Err(MpdoError::Sites("at least one site is required".into()));
    }
    if factors.len() != n || x.len() != n {
        return Err(MpdoError::Sites(format!(
            "{} factors and {} coefficients for an algebra of dimension {n}",
            factors.len(),
            x.len()
        )));
    }
    let d = factors[0].rows() as u128;
    check_budget(d.pow(2 * sites as u32))?;
    check_budget(n as u128 * d.pow(2 * (sites as u32 - 1)))?;
    let combine = |blocks: &[CMatrix], w: &[C64]| -> CMatrix {
        let mut out = CMatrix::zeros(blocks[0].rows(), blocks[0].cols());
        for (b, &c) in blocks.iter().zip(w) {
            if c != C64::new(0.0, 0.0) {
                out.axpy(c, b);
            }
        }
        out
    };
    if sites == 1 {
        return Ok(combine(factors, x));
    }
    let mut level: Vec<CMatrix> = factors.to_vec();
    for _ in 1..sites - 1 {
        let size = factors[0].rows() * level[0].rows();
        let next = (0..n)
            .map(|m| {
                let mut acc = CMatrix::zeros(size, size);
                for &(i, j, c) in structure.coproduct_entries(m) {
                    factors[i].kron_accumulate(&level[j], c, &mut acc);
                }
                acc
            })
            .collect();
        level = next;
    }
    // y[i][m] = Σ_k x_k D[k,i,m]
    let mut y = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (k, &xk) in x.iter().enumerate() {
        if xk == C64::new(0.0, 0.0) {
            continue;
        }
        for &(i, m, c) in structure.coproduct_entries(k) {
            y[i][m] += xk * c;
        }
    }
    let size = factors[0].rows() * level[0].rows();
    let mut out = CMatrix::zeros(size, size);
    for (i, yi) in y.iter().enumerate() {
        if yi.iter().all(|c| *c == C64::new(0.0, 0.0)) {
            continue;
        }
        factors[i].kron_accumulate(&combine(&level, yi), C64::new(1.0, 0.0), &mut out);
    }
    Ok(out)
}
