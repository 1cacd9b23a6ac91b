//! The [`WhaSpec`] data model and its elementwise operations.

use numeric_core::{c64, null_space, tol, CMatrix, C64};

use crate::element::{AlgebraElement, Functional};
use crate::error::SpecError;

/// Largest allowed unit residual.
pub const UNIT_TOL: f64 = 1e-12;
/// Largest allowed `φ(x*) − φ(x)†` residual.
pub const STAR_REP_TOL: f64 = 1e-10;

/// Raw structure constants handed to [`WhaSpec::new`].
///
/// Tensors are dense and row-major: `mult[(i*n + j)*n + k] = M[i][j][k]` and
/// `coproduct[(k*n + i)*n + j] = D[k][i][j]`.
#[derive(Clone, Debug)]
pub struct SpecParts {
    /// Basis labels, one per basis element.
    pub labels: Vec<String>,
    /// Multiplication constants.
    pub mult: Vec<C64>,
    /// Coefficients of the unit.
    pub unit: Vec<C64>,
    /// Star matrix: `x* = star · conj(x)`.
    pub star: CMatrix,
    /// Coproduct constants.
    pub coproduct: Vec<C64>,
    /// Counit values on the basis.
    pub counit: Vec<C64>,
    /// Antipode matrix: `S(e_j) = Σ_i antipode[(i, j)] e_i`.
    pub antipode: CMatrix,
    /// Dimension of the representation space.
    pub rep_dim: usize,
    /// Representation matrices `φ(e_i)`.
    pub rep: Vec<CMatrix>,
}

/// A finite-dimensional algebra with coproduct, counit, antipode, star and a
/// faithful *-representation, all given on a fixed basis.
///
/// Construction checks the structural invariants (sizes, finiteness, unit,
/// faithfulness and the *-representation property). The weak Hopf axioms
/// themselves are checked by the engine crate.
#[derive(Clone, Debug)]
pub struct WhaSpec {
    n: usize,
    labels: Vec<String>,
    mult: Vec<C64>,
    unit: Vec<C64>,
    star: CMatrix,
    coproduct: Vec<C64>,
    counit: Vec<C64>,
    antipode: CMatrix,
    rep_dim: usize,
    rep: Vec<CMatrix>,
}

fn check_len(what: &str, got: usize, want: usize) -> Result<(), SpecError> {
    if got == want {
        Ok(())
    } else {
        Err(SpecError::Dimension(format!(
            "{what}: {got} entries, expected {want}"
        )))
    }
}

fn check_finite<'a>(what: &str, it: impl IntoIterator<Item = &'a C64>) -> Result<(), SpecError> {
    if it.into_iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(SpecError::NonFinite(what.into()))
    }
}

impl WhaSpec {
    /// Validate raw data and build an algebra description.
    pub fn new(parts: SpecParts) -> Result<Self, SpecError> {
        let n = parts.labels.len();
        if n == 0 {
            return Err(SpecError::Dimension("empty basis".into()));
        }
        check_len("mult", parts.mult.len(), n * n * n)?;
        check_len("unit", parts.unit.len(), n)?;
        check_len("coproduct", parts.coproduct.len(), n * n * n)?;
        check_len("counit", parts.counit.len(), n)?;
        check_len("rep", parts.rep.len(), n)?;
        for (what, m) in [("star", &parts.star), ("antipode", &parts.antipode)] {
            if m.rows() != n || m.cols() != n {
                return Err(SpecError::Dimension(format!(
                    "{what}: {}x{} matrix, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (i, m) in parts.rep.iter().enumerate() {
            if m.rows() != parts.rep_dim || m.cols() != parts.rep_dim {
                return Err(SpecError::Dimension(format!(
                    "rep[{i}]: {}x{} matrix, expected {d}x{d}",
                    m.rows(),
                    m.cols(),
                    d = parts.rep_dim
                )));
            }
        }
        check_finite("mult", &parts.mult)?;
        check_finite("unit", &parts.unit)?;
        check_finite("coproduct", &parts.coproduct)?;
        check_finite("counit", &parts.counit)?;
        check_finite("star", parts.star.data())?;
        check_finite("antipode", parts.antipode.data())?;
        for m in &parts.rep {
            check_finite("rep", m.data())?;
        }
        let spec = Self {
            n,
            labels: parts.labels,
            mult: parts.mult,
            unit: parts.unit,
            star: parts.star,
            coproduct: parts.coproduct,
            counit: parts.counit,
            antipode: parts.antipode,
            rep_dim: parts.rep_dim,
            rep: parts.rep,
        };
        let unit_residual = spec.unit_residual();
        if unit_residual > UNIT_TOL {
            return Err(SpecError::BadUnit {
                residual: unit_residual,
            });
        }
        let rank = spec.rep_rank();
        if rank < n {
            return Err(SpecError::NotFaithful { rank, n });
        }
        let star_residual = spec.star_rep_residual();
        if star_residual > STAR_REP_TOL {
            return Err(SpecError::NotStarRep {
                residual: star_residual,
            });
        }
        Ok(spec)
    }

    /// Copy of the raw structure constants.
    pub fn to_parts(&self) -> SpecParts {
        SpecParts {
            labels: self.labels.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            star: self.star.clone(),
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            rep_dim: self.rep_dim,
            rep: self.rep.clone(),
        }
    }

    /// Algebra dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Basis labels.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dense multiplication tensor, index `(i*n + j)*n + k`.
    pub fn mult_tensor(&self) -> &[C64] {
        &self.mult
    }

    /// Dense coproduct tensor, index `(k*n + i)*n + j`.
    pub fn coproduct_tensor(&self) -> &[C64] {
        &self.coproduct
    }

    /// `M[i][j][k]`.
    #[inline]
    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> C64 {
        self.mult[(i * self.n + j) * self.n + k]
    }

    /// `D[k][i][j]`.
    #[inline]
    pub fn coproduct_coeff(&self, k: usize, i: usize, j: usize) -> C64 {
        self.coproduct[(k * self.n + i) * self.n + j]
    }

    /// Star matrix.
    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    /// Antipode matrix.
    pub fn antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    /// Representation dimension.
    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    /// Representation matrices of the basis.
    pub fn rep(&self) -> &[CMatrix] {
        &self.rep
    }

    /// The unit `1`.
    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::new(self.unit.clone())
    }

    /// The counit `ε`.
    pub fn counit(&self) -> Functional {
        Functional::new(self.counit.clone())
    }

    /// Basis element `e_i`.
    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.n, i)
    }

    /// Product `a b`.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let n = self.n;
        let mut out = vec![c64(0.0, 0.0); n];
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == c64(0.0, 0.0) {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                let s = ai * bj;
                if s == c64(0.0, 0.0) {
                    continue;
                }
                let row = &self.mult[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, m) in out.iter_mut().zip(row) {
                    *o += s * m;
                }
            }
        }
        AlgebraElement::new(out)
    }

    /// Star `a*`.
    pub fn star(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.star.matvec(a.conj().coeffs()))
    }

    /// Antipode `S(a)`.
    pub fn antipode(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.antipode.matvec(a.coeffs()))
    }

    /// Counit value `ε(a)`.
    pub fn counit_of(&self, a: &AlgebraElement) -> C64 {
        self.counit().apply(a)
    }

    /// Coproduct `Δ(a)` as an `n×n` coefficient matrix over `e_i ⊗ e_j`.
    pub fn coproduct(&self, a: &AlgebraElement) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for (k, &ak) in a.coeffs().iter().enumerate() {
            if ak == c64(0.0, 0.0) {
                continue;
            }
            let block = &self.coproduct[k * n * n..(k + 1) * n * n];
            for (o, d) in out.data_mut().iter_mut().zip(block) {
                *o += ak * d;
            }
        }
        out
    }

    /// Representation matrix `φ(a)`.
    pub fn phi(&self, a: &AlgebraElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.rep_dim, self.rep_dim);
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai != c64(0.0, 0.0) {
                out.axpy(ai, &self.rep[i]);
            }
        }
        out
    }

    /// Matrix of `y ↦ a y` on coefficient vectors.
    pub fn left_mult_matrix(&self, a: &AlgebraElement) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == c64(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    out[(k, j)] += ai * self.mult_coeff(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ y a` on coefficient vectors.
    pub fn right_mult_matrix(&self, a: &AlgebraElement) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for (j, &aj) in a.coeffs().iter().enumerate() {
            if aj == c64(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    out[(k, i)] += aj * self.mult_coeff(i, j, k);
                }
            }
        }
        out
    }

    /// Largest coefficient residual of `1·e_j = e_j = e_j·1`.
    pub fn unit_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                let delta = if j == k { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                let mut left = c64(0.0, 0.0);
                let mut right = c64(0.0, 0.0);
                for i in 0..n {
                    left += self.unit[i] * self.mult_coeff(i, j, k);
                    right += self.unit[i] * self.mult_coeff(j, i, k);
                }
                worst = worst.max((left - delta).norm()).max((right - delta).norm());
            }
        }
        worst
    }

    /// Rank of the stacked representation matrices.
    pub fn rep_rank(&self) -> usize {
        let d2 = self.rep_dim * self.rep_dim;
        let stacked = CMatrix::from_fn(d2, self.n, |r, c| self.rep[c].data()[r]);
        self.n - null_space(&stacked, tol::RANK).len()
    }

    /// Largest entrywise residual of `φ(e_i*) − φ(e_i)†` over the basis.
    pub fn star_rep_residual(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let e = self.basis(i);
                self.phi(&self.star(&e))
                    .max_abs_diff(&self.rep[i].adjoint())
            })
            .fold(0.0, f64::max)
    }
}
