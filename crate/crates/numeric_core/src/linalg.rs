//! Spectral decompositions, least squares and PSD functions.

use nalgebra::DMatrix;

use crate::error::NumericError;
use crate::matrix::{CMatrix, C64};
use crate::tol;

/// Eigen-decomposition of a matrix.
#[derive(Clone, Debug)]
pub struct EigReport {
    /// Eigenvalues in ascending order of real part.
    pub eigenvalues: Vec<C64>,
    /// Eigenvectors stored as columns, aligned with `eigenvalues`.
    pub eigenvectors: CMatrix,
    /// Whether the input was Hermitian (always true for [`hermitian_eig`]).
    pub hermitian_flag: bool,
}

impl EigReport {
    /// Real parts of the eigenvalues.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }
}

/// Relative gap below which eigenvalues share an eigenspace during
/// orthonormalization.
const DEGENERACY_TOL: f64 = 1e-9;

/// Real symmetric matrix `[[X, −Y], [Y, X]]` of the Hermitian part `X + iY`.
///
/// Every eigenvalue of the Hermitian matrix appears twice in its spectrum,
/// and an eigenvector `(u, v)` corresponds to the complex eigenvector `u + iv`.
fn real_embedding(m: &CMatrix) -> DMatrix<f64> {
    let h = m.hermitian_part();
    let n = h.rows();
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = h[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// The input must be Hermitian to within [`tol::HERMITIAN`] relative to its
/// largest entry. Eigenvalues are returned in ascending order with orthonormal
/// eigenvectors.
pub fn hermitian_eig(m: &CMatrix) -> Result<EigReport, NumericError> {
    if !m.is_square() {
        return Err(NumericError::DimensionMismatch(format!(
            "hermitian_eig of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermitian_deviation();
    if dev > tol::HERMITIAN * m.max_abs().max(1.0) {
        return Err(NumericError::NotHermitian { deviation: dev });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(EigReport {
            eigenvalues: vec![],
            eigenvectors: CMatrix::zeros(0, 0),
            hermitian_flag: true,
        });
    }
    let eig = real_embedding(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let window = DEGENERACY_TOL * scale;
    let mut values: Vec<f64> = Vec::with_capacity(n);
    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut first = 0;
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        let mut w: Vec<C64> = (0..n)
            .map(|r| C64::new(eig.eigenvectors[(r, k)], eig.eigenvectors[(n + r, k)]))
            .collect();
        while first < values.len() && values[first] < lambda - window {
            first += 1;
        }
        for _ in 0..2 {
            for v in &vectors[first..] {
                let overlap: C64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= overlap * vi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 && values.len() < n {
            w.iter_mut().for_each(|z| *z /= norm);
            values.push(lambda);
            vectors.push(w);
        }
    }
    if values.len() != n {
        return Err(NumericError::NonFinite(format!(
            "hermitian_eig recovered {} of {n} eigenvectors",
            values.len()
        )));
    }
    let eigenvalues = values.iter().map(|&v| C64::new(v, 0.0)).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| vectors[c][r]);
    if !eigenvectors.is_finite() {
        return Err(NumericError::NonFinite("hermitian_eig".into()));
    }
    Ok(EigReport {
        eigenvalues,
        eigenvectors,
        hermitian_flag: true,
    })
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>, NumericError> {
    if !m.is_square() {
        return Err(NumericError::DimensionMismatch(
            "eigenvalues of non-square".into(),
        ));
    }
    let dev = m.hermitian_deviation();
    if dev > tol::HERMITIAN * m.max_abs().max(1.0) {
        return Err(NumericError::NotHermitian { deviation: dev });
    }
    if m.rows() == 0 {
        return Ok(vec![]);
    }
    let mut doubled: Vec<f64> = real_embedding(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    if doubled.iter().any(|x| !x.is_finite()) {
        return Err(NumericError::NonFinite("hermitian_eigenvalues".into()));
    }
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Result of a least-squares solve.
#[derive(Clone, Debug)]
pub struct LstsqReport {
    /// Minimum-norm least-squares solution, one column per right-hand side.
    pub solution: CMatrix,
    /// Largest entry modulus of `a·solution − b`.
    pub residual: f64,
    /// Numerical rank of `a`.
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `a·x = b` via the SVD.
pub fn lstsq(a: &CMatrix, b: &CMatrix) -> Result<LstsqReport, NumericError> {
    if a.rows() != b.rows() {
        return Err(NumericError::DimensionMismatch(format!(
            "lstsq with {} equations and {} right-hand rows",
            a.rows(),
            b.rows()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return Ok(LstsqReport {
            solution: CMatrix::zeros(0, b.cols()),
            residual: b.max_abs(),
            rank: 0,
        });
    }
    // nalgebra's SVD is thin; padding to a tall matrix keeps V complete.
    let a_na = if m >= n {
        a.to_nalgebra()
    } else {
        let mut padded = DMatrix::<C64>::zeros(n, n);
        padded.view_mut((0, 0), (m, n)).copy_from(&a.to_nalgebra());
        padded
    };
    let mut b_na = DMatrix::<C64>::zeros(a_na.nrows(), b.cols());
    b_na.view_mut((0, 0), (m, b.cols()))
        .copy_from(&b.to_nalgebra());
    let svd = a_na.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol::RANK * smax.max(1e-300);
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let u = svd.u.as_ref().expect("svd computed with u");
    let vt = svd.v_t.as_ref().expect("svd computed with v_t");
    let utb = u.adjoint() * &b_na;
    let mut y = DMatrix::<C64>::zeros(vt.nrows(), b.cols());
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            for c in 0..b.cols() {
                y[(i, c)] = utb[(i, c)] / s;
            }
        }
    }
    let x = vt.adjoint() * y;
    let solution = CMatrix::from_nalgebra(&x);
    if !solution.is_finite() {
        return Err(NumericError::NonFinite("lstsq".into()));
    }
    let residual = a.matmul(&solution).max_abs_diff(b);
    Ok(LstsqReport {
        solution,
        residual,
        rank,
    })
}

/// Solve `a·x = b` in the least-squares sense and return the solution.
pub fn solve_linear(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, NumericError> {
    Ok(lstsq(a, b)?.solution)
}

/// Orthonormal basis of the null space of `a`, one vector per entry.
///
/// Singular values at most `tol` times the largest one count as zero; a zero
/// matrix has the whole space as its null space.
pub fn null_space(a: &CMatrix, tol: f64) -> Vec<Vec<C64>> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return vec![];
    }
    let rows = m.max(n);
    let mut padded = DMatrix::<C64>::zeros(rows, n);
    if m > 0 {
        padded.view_mut((0, 0), (m, n)).copy_from(&a.to_nalgebra());
    }
    let svd = padded.svd(false, true);
    let vt = svd.v_t.as_ref().expect("svd computed with v_t");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if smax == 0.0 || s <= tol * smax {
            out.push((0..n).map(|j| vt[(i, j)].conj()).collect());
        }
    }
    out
}

/// Coefficients `c` with `Σ_i c_i · mats[i] = target`.
///
/// Fails with [`NumericError::NotInImage`] if the best fit leaves a residual
/// above `tol`.
pub fn pullback(mats: &[CMatrix], target: &CMatrix, tol: f64) -> Result<Vec<C64>, NumericError> {
    let entries = target.rows() * target.cols();
    for m in mats {
        if m.rows() != target.rows() || m.cols() != target.cols() {
            return Err(NumericError::DimensionMismatch(
                "pullback matrices and target differ in shape".into(),
            ));
        }
    }
    let a = CMatrix::from_fn(entries, mats.len(), |r, c| mats[c].data()[r]);
    let b = CMatrix::from_vec(entries, 1, target.data().to_vec())?;
    let rep = lstsq(&a, &b)?;
    if rep.residual > tol {
        return Err(NumericError::NotInImage {
            residual: rep.residual,
        });
    }
    Ok(rep.solution.column(0))
}

fn spectral_map(
    m: &CMatrix,
    f: impl Fn(f64) -> Result<f64, NumericError>,
) -> Result<CMatrix, NumericError> {
    let eig = hermitian_eig(m)?;
    let n = m.rows();
    let v = &eig.eigenvectors;
    let vals: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|z| f(z.re))
        .collect::<Result<_, _>>()?;
    let scaled = CMatrix::from_fn(n, n, |r, c| v[(r, c)] * vals[c]);
    Ok(scaled.matmul(&v.adjoint()).hermitian_part())
}

/// Square root of a PSD matrix.
///
/// Eigenvalues down to `-tol::PSD · max(1, ‖m‖)` are clipped to zero; more
/// negative ones are an error.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix, NumericError> {
    let floor = -tol::PSD * m.max_abs().max(1.0);
    spectral_map(m, |x| {
        if x < floor {
            Err(NumericError::NotPsd { min_eigenvalue: x })
        } else {
            Ok(x.max(0.0).sqrt())
        }
    })
}

/// Inverse of a positive definite matrix.
pub fn psd_inverse(m: &CMatrix) -> Result<CMatrix, NumericError> {
    let floor = tol::PSD * m.max_abs().max(1.0);
    spectral_map(m, |x| {
        if x <= floor {
            Err(NumericError::Singular { min_eigenvalue: x })
        } else {
            Ok(1.0 / x)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    #[test]
    fn psd_sqrt_of_diagonal() {
        let r = psd_sqrt(&CMatrix::diag_real(&[4.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&CMatrix::diag_real(&[2.0, 3.0])) < 1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        assert!(matches!(
            psd_sqrt(&CMatrix::diag_real(&[1.0, -1.0])),
            Err(NumericError::NotPsd { .. })
        ));
    }

    #[test]
    fn psd_inverse_of_scaled_identity() {
        let r = psd_inverse(&CMatrix::identity(2).scale_real(2.0)).unwrap();
        assert!(r.max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-14);
    }

    #[test]
    fn hermitian_eig_rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            hermitian_eig(&m),
            Err(NumericError::NotHermitian { .. })
        ));
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0, 0.0]]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((v[0] + v[1]).norm() < 1e-12);
        }
    }

    #[test]
    fn null_space_of_zero_is_everything() {
        assert_eq!(null_space(&CMatrix::zeros(2, 3), 1e-12).len(), 3);
    }

    #[test]
    fn lstsq_square_solve() {
        let a = CMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 4.0]]);
        let b = CMatrix::from_fn(2, 1, |r, _| c64(1.0 + r as f64, 0.0));
        let x = lstsq(&a, &b).unwrap();
        assert_eq!(x.rank, 2);
        assert!((x.solution[(0, 0)] - c64(0.5, 0.0)).norm() < 1e-14);
        assert!((x.solution[(1, 0)] - c64(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn lstsq_wide_minimum_norm() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0]]);
        let b = CMatrix::from_fn(1, 1, |_, _| c64(2.0, 0.0));
        let x = lstsq(&a, &b).unwrap();
        assert!((x.solution[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((x.solution[(1, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pullback_detects_missing_image() {
        let mats = vec![CMatrix::identity(2)];
        let err = pullback(&mats, &CMatrix::diag_real(&[1.0, -1.0]), 1e-9);
        assert!(matches!(err, Err(NumericError::NotInImage { .. })));
    }
}
