//! Density-matrix utilities on tensor products of sites.

use crate::error::NumericError;
use crate::linalg::hermitian_eigenvalues;
use crate::matrix::{CMatrix, C64};

fn check_sites(m: &CMatrix, site_dims: &[usize]) -> Result<usize, NumericError> {
    let total: usize = site_dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(NumericError::DimensionMismatch(format!(
            "{}x{} matrix on sites {:?} (product {})",
            m.rows(),
            m.cols(),
            site_dims,
            total
        )));
    }
    Ok(total)
}

/// Trace over every site not listed in `keep`.
///
/// Sites are ordered left to right with the leftmost site most significant in
/// the row index. The kept sites retain their relative order.
pub fn partial_trace(
    m: &CMatrix,
    site_dims: &[usize],
    keep: &[usize],
) -> Result<CMatrix, NumericError> {
    check_sites(m, site_dims)?;
    let n = site_dims.len();
    let mut kept = vec![false; n];
    for &k in keep {
        if k >= n {
            return Err(NumericError::DimensionMismatch(format!(
                "site {k} out of range for {n} sites"
            )));
        }
        kept[k] = true;
    }
    let keep_sites: Vec<usize> = (0..n).filter(|&s| kept[s]).collect();
    let trace_sites: Vec<usize> = (0..n).filter(|&s| !kept[s]).collect();
    let dk: usize = keep_sites.iter().map(|&s| site_dims[s]).product();
    let dt: usize = trace_sites.iter().map(|&s| site_dims[s]).product();
    // Strides of each site inside the full index.
    let mut stride = vec![1usize; n];
    for s in (0..n.saturating_sub(1)).rev() {
        stride[s] = stride[s + 1] * site_dims[s + 1];
    }
    let offsets = |sites: &[usize], mut idx: usize| -> usize {
        let mut off = 0;
        for &s in sites.iter().rev() {
            off += (idx % site_dims[s]) * stride[s];
            idx /= site_dims[s];
        }
        off
    };
    let keep_off: Vec<usize> = (0..dk).map(|i| offsets(&keep_sites, i)).collect();
    let trace_off: Vec<usize> = (0..dt).map(|i| offsets(&trace_sites, i)).collect();
    let mut out = CMatrix::zeros(dk, dk);
    let cols = m.cols();
    let data = m.data();
    for (r, &ro) in keep_off.iter().enumerate() {
        for (c, &co) in keep_off.iter().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for &t in &trace_off {
                s += data[(ro + t) * cols + co + t];
            }
            out[(r, c)] = s;
        }
    }
    Ok(out)
}

/// Reorder tensor factors: site `k` of the output is site `perm[k]` of the input.
pub fn permute_sites(
    m: &CMatrix,
    site_dims: &[usize],
    perm: &[usize],
) -> Result<CMatrix, NumericError> {
    let total = check_sites(m, site_dims)?;
    let n = site_dims.len();
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(NumericError::DimensionMismatch(format!(
            "{perm:?} is not a permutation of {n} sites"
        )));
    }
    let mut stride = vec![1usize; n];
    for s in (0..n.saturating_sub(1)).rev() {
        stride[s] = stride[s + 1] * site_dims[s + 1];
    }
    let out_dims: Vec<usize> = perm.iter().map(|&p| site_dims[p]).collect();
    // For every output index, the input index it reads from.
    let map: Vec<usize> = (0..total)
        .map(|mut idx| {
            let mut src = 0;
            for k in (0..n).rev() {
                src += (idx % out_dims[k]) * stride[perm[k]];
                idx /= out_dims[k];
            }
            src
        })
        .collect();
    Ok(CMatrix::from_fn(total, total, |r, c| m[(map[r], map[c])]))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64, NumericError> {
    Ok(hermitian_eigenvalues(m)?
        .first()
        .copied()
        .unwrap_or(f64::INFINITY))
}

/// Whether a Hermitian matrix has no eigenvalue below `-tol`.
pub fn is_psd(m: &CMatrix, tol: f64) -> Result<bool, NumericError> {
    Ok(min_eigenvalue(m)? >= -tol)
}

/// Trace norm (sum of absolute eigenvalues) of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64, NumericError> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

/// Trace distance `½‖a − b‖₁` of two Hermitian matrices.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> Result<f64, NumericError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(NumericError::DimensionMismatch(
            "trace_distance shapes".into(),
        ));
    }
    Ok(0.5 * trace_norm(&(a - b))?)
}

/// Upper bound `½√d‖a − b‖_F` on the trace distance, valid in dimension `d`.
///
/// The bound avoids an eigen-solve and is used for very large states.
pub fn trace_distance_bound(a: &CMatrix, b: &CMatrix) -> Result<f64, NumericError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(NumericError::DimensionMismatch(
            "trace_distance shapes".into(),
        ));
    }
    let diff = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(0.5 * (a.rows() as f64).sqrt() * diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_distance_of_orthogonal_pure_states() {
        let p0 = CMatrix::diag_real(&[1.0, 0.0]);
        let p1 = CMatrix::diag_real(&[0.0, 1.0]);
        assert!((trace_distance(&p0, &p1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn partial_trace_of_identity() {
        let r = partial_trace(&CMatrix::identity(4), &[2, 2], &[1]).unwrap();
        assert!(r.max_abs_diff(&CMatrix::identity(2).scale_real(2.0)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        assert!(partial_trace(&CMatrix::identity(4), &[2, 3], &[0]).is_err());
    }

    #[test]
    fn permute_swaps_product() {
        let a = CMatrix::diag_real(&[1.0, 2.0]);
        let b = CMatrix::diag_real(&[3.0, 5.0, 7.0]);
        let swapped = permute_sites(&a.kron(&b), &[2, 3], &[1, 0]).unwrap();
        assert!(swapped.max_abs_diff(&b.kron(&a)) < 1e-15);
    }

    #[test]
    fn bound_dominates_exact() {
        let a = CMatrix::diag_real(&[0.7, 0.3]);
        let b = CMatrix::diag_real(&[0.5, 0.5]);
        assert!(trace_distance_bound(&a, &b).unwrap() >= trace_distance(&a, &b).unwrap() - 1e-15);
    }
}
