//! Sparse views of the structure constants and tensor-level operations.

use algebra_spec::{AlgebraElement, Functional, WhaSpec};
use numeric_core::{c64, CMatrix, C64};

use crate::error::EngineError;

/// Default dense-entry budget for coefficient tensors and density matrices.
pub const DEFAULT_BUDGET_ENTRIES: u128 = 20_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET_ENTRIES`].
pub const BUDGET_ENV: &str = "WHA_BUDGET_ENTRIES";

/// Active dense-entry budget.
pub fn budget_entries() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .unwrap_or(DEFAULT_BUDGET_ENTRIES)
}

/// Fail with [`EngineError::Budget`] if `entries` exceeds the active budget.
pub fn check_budget(entries: u128) -> Result<(), EngineError> {
    let budget = budget_entries();
    if entries > budget {
        Err(EngineError::Budget { entries, budget })
    } else {
        Ok(())
    }
}

fn nz(z: C64) -> bool {
    z.re != 0.0 || z.im != 0.0
}

/// Nonzero structure constants of an algebra, indexed for fast loops.
#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    /// `(i, j, k, M[i][j][k])` for every nonzero product constant.
    mult: Vec<(usize, usize, usize, C64)>,
    /// `cop[k]` lists `(i, j, D[k][i][j])` for every nonzero coproduct constant.
    cop: Vec<Vec<(usize, usize, C64)>>,
}

impl Structure {
    /// Index the nonzero constants of `spec`.
    pub fn new(spec: &WhaSpec) -> Self {
        let n = spec.n();
        let mut mult = Vec::new();
        let mut cop = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let m = spec.mult_coeff(i, j, k);
                    if nz(m) {
                        mult.push((i, j, k, m));
                    }
                    let d = spec.coproduct_coeff(i, j, k);
                    if nz(d) {
                        cop[i].push((j, k, d));
                    }
                }
            }
        }
        Self { n, mult, cop }
    }

    /// Algebra dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero product constants.
    pub fn mult_entries(&self) -> &[(usize, usize, usize, C64)] {
        &self.mult
    }

    /// Nonzero coproduct constants of `Δ(e_k)`.
    pub fn coproduct_entries(&self, k: usize) -> &[(usize, usize, C64)] {
        &self.cop[k]
    }

    /// Product in `A⊗A` of two `n×n` coefficient matrices.
    pub fn mul2(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for &(i, k, a, m1) in &self.mult {
            for &(j, l, b, m2) in &self.mult {
                let s = x[(i, j)] * y[(k, l)];
                if nz(s) {
                    out[(a, b)] += s * m1 * m2;
                }
            }
        }
        out
    }

    /// Product in `A⊗A⊗A` of two coefficient tensors of length `n³`.
    pub fn mul3(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.n;
        // Direct evaluation: (x ⊗-product y)[a,b,c] = Σ x[i,j,k] y[p,q,r] M[i,p,a] M[j,q,b] M[k,r,c].
        let mut out = vec![c64(0.0, 0.0); n * n * n];
        let mut by_left: Vec<Vec<(usize, usize, C64)>> = vec![Vec::new(); n];
        for &(i, p, a, m) in &self.mult {
            by_left[i].push((p, a, m));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let xv = x[(i * n + j) * n + k];
                    if !nz(xv) {
                        continue;
                    }
                    for &(p, a, m1) in &by_left[i] {
                        for &(q, b, m2) in &by_left[j] {
                            for &(r, c, m3) in &by_left[k] {
                                let yv = y[(p * n + q) * n + r];
                                if nz(yv) {
                                    out[(a * n + b) * n + c] += xv * yv * m1 * m2 * m3;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `Δ^{(k)}(x)` as a dense tensor over `n^{k+1}` indices, first factor most
    /// significant. `Δ^{(0)}(x) = x` and `Δ^{(k+1)} = (Δ⊗id^{⊗k})∘Δ^{(k)}`.
    pub fn delta_power(&self, x: &[C64], k: usize) -> Result<Vec<C64>, EngineError> {
        let n = self.n;
        check_budget((n as u128).saturating_pow(k as u32 + 1))?;
        let mut t = x.to_vec();
        let mut rest = 1usize;
        for _ in 0..k {
            let mut out = vec![c64(0.0, 0.0); t.len() * n];
            for m in 0..n {
                for r in 0..rest {
                    let v = t[m * rest + r];
                    if !nz(v) {
                        continue;
                    }
                    for &(i, j, d) in &self.cop[m] {
                        out[(i * n + j) * rest + r] += v * d;
                    }
                }
            }
            t = out;
            rest *= n;
        }
        Ok(t)
    }

    /// `Δ^{(k)}(x)` computed with the opposite bracketing
    /// `(id^{⊗k}⊗Δ)∘Δ^{(k-1)}`, used to cross-check coassociativity.
    pub fn delta_power_right(&self, x: &[C64], k: usize) -> Result<Vec<C64>, EngineError> {
        let n = self.n;
        check_budget((n as u128).saturating_pow(k as u32 + 1))?;
        let mut t = x.to_vec();
        for _ in 0..k {
            let lead = t.len() / n;
            let mut out = vec![c64(0.0, 0.0); t.len() * n];
            for l in 0..lead {
                for m in 0..n {
                    let v = t[l * n + m];
                    if !nz(v) {
                        continue;
                    }
                    for &(i, j, d) in &self.cop[m] {
                        out[(l * n + i) * n + j] += v * d;
                    }
                }
            }
            t = out;
        }
        Ok(t)
    }
}

/// `Δ(x)` coefficient matrix for an element.
pub fn coproduct(spec: &WhaSpec, x: &AlgebraElement) -> CMatrix {
    spec.coproduct(x)
}

/// `(f⊗id)(X)` for a coefficient matrix `X` over `A⊗A`.
pub fn apply_left(f: &Functional, x: &CMatrix) -> AlgebraElement {
    let n = x.cols();
    AlgebraElement::new(
        (0..n)
            .map(|b| (0..x.rows()).map(|a| f[a] * x[(a, b)]).sum())
            .collect(),
    )
}

/// `(id⊗f)(X)` for a coefficient matrix `X` over `A⊗A`.
pub fn apply_right(f: &Functional, x: &CMatrix) -> AlgebraElement {
    AlgebraElement::new(x.matvec(f.coeffs()))
}

/// Outer product `a ⊗ b` as a coefficient matrix.
pub fn outer(a: &AlgebraElement, b: &AlgebraElement) -> CMatrix {
    CMatrix::from_fn(a.len(), b.len(), |r, c| a[r] * b[c])
}

/// Matrix whose columns are the given elements.
pub fn columns(elements: &[AlgebraElement]) -> CMatrix {
    let cols: Vec<Vec<C64>> = elements.iter().map(|e| e.coeffs().to_vec()).collect();
    CMatrix::from_columns(&cols)
}

/// Convolution `(fg)(x) = f(x₁)g(x₂)` of two functionals.
pub fn convolve(structure: &Structure, f: &Functional, g: &Functional) -> Functional {
    let n = structure.n();
    Functional::new(
        (0..n)
            .map(|k| {
                structure
                    .coproduct_entries(k)
                    .iter()
                    .map(|&(i, j, d)| d * f[i] * g[j])
                    .sum()
            })
            .collect(),
    )
}
