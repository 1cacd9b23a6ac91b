//! Row-major dense complex matrices.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::NumericError;

/// Complex double used throughout the workspace.
pub type C64 = num_complex::Complex64;

/// Shorthand constructor for a complex scalar.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(12) {
            write!(f, "  ")?;
            for c in 0..self.cols.min(12) {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major entry vector.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, NumericError> {
        if data.len() != rows * cols {
            return Err(NumericError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from a closure evaluated at every `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from real entries given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        Self::from_fn(nr, nc, |r, c| C64::new(rows[r][c], 0.0))
    }

    /// Diagonal matrix with the given real entries.
    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Number of rows.
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    #[inline]
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Mutable row-major entries.
    #[inline]
    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Consume into the row-major entry vector.
    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Plain transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Multiply every entry by a scalar.
    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Multiply every entry by a real scalar.
    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// In-place `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += s * b;
        }
    }

    /// Matrix product, panicking on a shape mismatch.
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![C64::new(0.0, 0.0); n * p];
        for i in 0..n {
            let orow = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * p..(k + 1) * p];
                for (o, b) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * b;
                }
            }
        }
        CMatrix {
            rows: n,
            cols: p,
            data: out,
        }
    }

    /// Matrix product with a shape check.
    pub fn try_matmul(&self, other: &CMatrix) -> Result<CMatrix, NumericError> {
        if self.cols != other.rows {
            return Err(NumericError::DimensionMismatch(format!(
                "matmul {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.matmul(other))
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        let cols = ac * bc;
        let mut out = vec![C64::new(0.0, 0.0); ar * br * cols];
        for i in 0..ar {
            for j in 0..ac {
                let a = self.data[i * ac + j];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..br {
                    let row = (i * br + k) * cols + j * bc;
                    let brow = &other.data[k * bc..(k + 1) * bc];
                    for (o, b) in out[row..row + bc].iter_mut().zip(brow.iter()) {
                        *o = a * b;
                    }
                }
            }
        }
        CMatrix {
            rows: ar * br,
            cols,
            data: out,
        }
    }

    /// Accumulate `s * (self ⊗ other)` into `acc` without allocating the product.
    pub fn kron_accumulate(&self, other: &CMatrix, s: C64, acc: &mut CMatrix) {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        assert_eq!((acc.rows, acc.cols), (ar * br, ac * bc));
        let cols = ac * bc;
        for i in 0..ar {
            for j in 0..ac {
                let a = s * self.data[i * ac + j];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..br {
                    let row = (i * br + k) * cols + j * bc;
                    let brow = &other.data[k * bc..(k + 1) * bc];
                    for (o, b) in acc.data[row..row + bc].iter_mut().zip(brow.iter()) {
                        *o += a * b;
                    }
                }
            }
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> C64 {
        assert_eq!((self.cols, self.rows), (other.rows, other.cols));
        let mut s = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                s += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        s
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - self†`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut m: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                m = m.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        m
    }

    /// `(self + self†) / 2`.
    pub fn hermitian_part(&self) -> CMatrix {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |r, c| {
            (self[(r, c)] + self[(c, r)].conj()) * 0.5
        })
    }

    /// Whether all entries are finite.
    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Copy of the rectangular block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Write `b` into the block starting at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMatrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> CMatrix {
        let nc = cols.len();
        let nr = cols.first().map_or(0, |c| c.len());
        Self::from_fn(nr, nc, |r, c| cols[c][r])
    }

    /// Conversion into an `nalgebra` matrix.
    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<C64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    /// Conversion from an `nalgebra` matrix.
    pub fn from_nalgebra(m: &nalgebra::DMatrix<C64>) -> CMatrix {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        self.axpy(C64::new(1.0, 0.0), rhs);
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        self.axpy(C64::new(-1.0, 0.0), rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }

    #[test]
    fn kron_of_pauli_z() {
        let z = CMatrix::diag_real(&[1.0, -1.0]);
        assert_eq!(z.kron(&z), CMatrix::diag_real(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_accumulate_matches_kron() {
        let a = CMatrix::from_fn(2, 3, |r, c| c64(r as f64 + 1.0, c as f64));
        let b = CMatrix::from_fn(3, 2, |r, c| c64(c as f64 - r as f64, 0.5));
        let mut acc = CMatrix::zeros(6, 6);
        a.kron_accumulate(&b, c64(2.0, 0.0), &mut acc);
        assert!(acc.max_abs_diff(&a.kron(&b).scale_real(2.0)) < 1e-15);
    }

    #[test]
    fn matmul_and_trace_product_agree() {
        let a = CMatrix::from_fn(3, 3, |r, c| c64((r * 3 + c) as f64, 1.0));
        let b = CMatrix::from_fn(3, 3, |r, c| c64(1.0, (r as f64) - (c as f64)));
        assert!((a.matmul(&b).trace() - a.trace_product(&b)).norm() < 1e-12);
    }

    #[test]
    fn from_vec_rejects_wrong_length() {
        assert!(CMatrix::from_vec(2, 2, vec![c64(0.0, 0.0); 3]).is_err());
    }
}
