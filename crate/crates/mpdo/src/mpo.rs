//! Matrix product operator tensors with bond space `A`.

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{c64, CMatrix, C64};
use wha_engine::{check_budget, DistinguishedElements};

use crate::error::MpdoError;
use crate::state::weighted_factors;

/// Which physical operators the tensor carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpoForm {
    /// `φ(e_i)`: closures give `φ^{⊗N}Δ^{(N-1)}(x)`.
    Bare,
    /// `φ(c_ω e_i)`: closures give `ω(x)·ρ_N(x)`.
    Weighted,
}

/// A translation-invariant MPO tensor `A[l,r] = Σ_i D[l,i,r] F_i`.
///
/// Left and right bonds carry algebra basis indices. The tensor is stored as
/// one physical operator per bond pair.
#[derive(Clone, Debug)]
pub struct MpoTensor {
    /// Bond dimension, the algebra dimension `n`.
    pub bond_dim: usize,
    /// Physical dimension of one site.
    pub phys_dim: usize,
    /// Physical operators indexed `l * bond_dim + r`.
    pub blocks: Vec<CMatrix>,
    /// Counit coefficients `ε(e_r)`, used by the boundary map.
    counit: Vec<C64>,
}

/// Build the MPO tensor of `spec` in the requested form.
pub fn export_mpo_tensor(spec: &WhaSpec, d: &DistinguishedElements, form: MpoForm) -> MpoTensor {
    let n = spec.n();
    let factors = match form {
        MpoForm::Bare => spec.rep().to_vec(),
        MpoForm::Weighted => weighted_factors(spec, d),
    };
    let p = spec.rep_dim();
    let mut blocks = vec![CMatrix::zeros(p, p); n * n];
    for l in 0..n {
        for i in 0..n {
            for r in 0..n {
                let c = spec.coproduct_coeff(l, i, r);
                if c != c64(0.0, 0.0) {
                    blocks[l * n + r].axpy(c, &factors[i]);
                }
            }
        }
    }
    let eps = spec.counit();
    MpoTensor {
        bond_dim: n,
        phys_dim: p,
        blocks,
        counit: eps.coeffs().to_vec(),
    }
}

impl MpoTensor {
    /// Build a tensor from explicit coefficients `t[l][r][out][in]`.
    pub fn from_coefficients(
        bond_dim: usize,
        phys_dim: usize,
        coeff: impl Fn(usize, usize, usize, usize) -> C64,
    ) -> Self {
        let blocks = (0..bond_dim * bond_dim)
            .map(|lr| {
                CMatrix::from_fn(phys_dim, phys_dim, |p, q| {
                    coeff(lr / bond_dim, lr % bond_dim, p, q)
                })
            })
            .collect();
        MpoTensor {
            bond_dim,
            phys_dim,
            blocks,
            counit: vec![c64(0.0, 0.0); bond_dim],
        }
    }

    /// Coefficient at left bond `l`, right bond `r`, physical output `p` and input `q`.
    pub fn coefficient(&self, l: usize, r: usize, p: usize, q: usize) -> C64 {
        self.blocks[l * self.bond_dim + r][(p, q)]
    }

    /// Every nonzero coefficient as `((l, r, p, q), value)`.
    pub fn nonzero(&self, tol: f64) -> Vec<((usize, usize, usize, usize), C64)> {
        let mut out = Vec::new();
        for l in 0..self.bond_dim {
            for r in 0..self.bond_dim {
                let b = &self.blocks[l * self.bond_dim + r];
                for p in 0..self.phys_dim {
                    for q in 0..self.phys_dim {
                        if b[(p, q)].norm() > tol {
                            out.push(((l, r, p, q), b[(p, q)]));
                        }
                    }
                }
            }
        }
        out
    }

    /// Boundary `b(x)[r,l] = ε(e_r)x_l` closing a chain into `Δ^{(N-1)}(x)`.
    pub fn boundary(&self, x: &AlgebraElement) -> CMatrix {
        CMatrix::from_fn(self.bond_dim, self.bond_dim, |r, l| self.counit[r] * x[l])
    }

    /// `Σ b[r,l] A[l,m₁]⊗A[m₁,m₂]⊗…⊗A[m_{N−1},r]` over `sites` copies.
    pub fn close(&self, boundary: &CMatrix, sites: usize) -> Result<CMatrix, MpdoError> {
        let n = self.bond_dim;
        if sites == 0 {
            return Err(MpdoError::Sites("at least one site is required".into()));
        }
        let p = self.phys_dim as u128;
        check_budget(n as u128 * p.pow(2 * sites as u32))?;
        let dim = self.phys_dim.pow(sites as u32);
        let mut out = CMatrix::zeros(dim, dim);
        for l in 0..n {
            if (0..n).all(|r| boundary[(r, l)] == c64(0.0, 0.0)) {
                continue;
            }
            // row[r] holds the partial chain from bond l to bond r.
            let mut row: Vec<CMatrix> = (0..n).map(|r| self.blocks[l * n + r].clone()).collect();
            for _ in 1..sites {
                let size = row[0].rows() * self.phys_dim;
                let mut next = vec![CMatrix::zeros(size, size); n];
                for (m, left) in row.iter().enumerate() {
                    if left.max_abs() == 0.0 {
                        continue;
                    }
                    for (r, acc) in next.iter_mut().enumerate() {
                        let block = &self.blocks[m * n + r];
                        if block.max_abs() != 0.0 {
                            left.kron_accumulate(block, c64(1.0, 0.0), acc);
                        }
                    }
                }
                row = next;
            }
            for (r, chain) in row.iter().enumerate() {
                let b = boundary[(r, l)];
                if b != c64(0.0, 0.0) {
                    out.axpy(b, chain);
                }
            }
        }
        Ok(out)
    }
}
