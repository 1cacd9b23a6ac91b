//! Canonical elements of a biconnected weak Hopf algebra.

use algebra_spec::{AlgebraElement, Functional, WhaSpec};
use numeric_core::{c64, lstsq, tol, CMatrix};

use crate::dual::dualize;
use crate::elements::{apply_matrix, compose_functional, eps_s, inverse, sqrt};
use crate::error::EngineError;
use crate::haar::haar_integral;
use crate::sectors::{sector_basics, sectors, SectorBasics, SectorData};

/// Tolerance for the checks run while constructing [`DistinguishedElements`].
pub const CONSTRUCTION_TOL: f64 = 1e-9;

/// Ω, ω, the Haar integrals, group-like elements, ξ, c_ω, T and related data.
#[derive(Clone, Debug)]
pub struct DistinguishedElements {
    /// Sector data of `A`.
    pub sectors: SectorData,
    /// The dual algebra `A*` with its GNS representation.
    pub dual: WhaSpec,
    /// Sector data of `A*`.
    pub dual_sectors: SectorBasics,
    /// `𝒟² = Σ d_α²`.
    pub d2: f64,
    /// `Σ d̂_a²`, equal to `𝒟²` for biconnected algebras.
    pub d2_hat: f64,
    /// `ε(1)`.
    pub eps_one: f64,
    /// `ω = 𝒟⁻² Σ d_α χ_α`.
    pub omega: Functional,
    /// `Ω = 𝒟⁻² Σ d̂_a χ̂_a`.
    pub big_omega: AlgebraElement,
    /// Haar integral `h` of `A`.
    pub haar: AlgebraElement,
    /// Haar integral `ĥ` of `A*`.
    pub dual_haar: Functional,
    /// `g_L = (h₁ĥ(h₂))^{1/2}`.
    pub g_l: AlgebraElement,
    /// `g_R = S(g_L)`.
    pub g_r: AlgebraElement,
    /// `g = g_L g_R⁻¹`.
    pub g: AlgebraElement,
    /// `ĝ_L`, the same construction in `A*`.
    pub ghat_l: Functional,
    /// `ĝ_R = Ŝ(ĝ_L)`.
    pub ghat_r: Functional,
    /// `ĝ = ĝ_L ĝ_R⁻¹`.
    pub ghat: Functional,
    /// `ξ`, the inverse of `ω(Ω₁)Ω₂`.
    pub xi: AlgebraElement,
    /// `ξ⁻¹ = ω(Ω₁)Ω₂`.
    pub xi_inv: AlgebraElement,
    /// `ξ_L = 𝒟²ε(1) g_L`.
    pub xi_l: AlgebraElement,
    /// `ξ_R = 𝒟²ε(1) g_R`.
    pub xi_r: AlgebraElement,
    /// `c_ω = 𝒟⁻² Σ (d_α/ν_α) e_α`.
    pub c_omega: AlgebraElement,
    /// Matrix of `T`: `T(e_j) = Σ_k T[k][j] e_k`.
    pub t_matrix: CMatrix,
    /// Residual of the linear solve for `T`.
    pub t_solve_residual: f64,
    /// Left integral `t` of `A` with `ĥ(t₁)t₂ = 1`.
    pub t_dual_integral: AlgebraElement,
    /// `τ(x) = ĥ(g_L⁻¹g_R⁻¹x)`.
    pub tau: Functional,
    /// Dual characters `χ̂_a` read as elements of `A`.
    pub dual_characters_in_a: Vec<AlgebraElement>,
    /// Dual FP dimensions `d̂_a`.
    pub dual_fp_dims: Vec<f64>,
    /// Index of the trivial sector of `A` (`χ_α(h) ≠ 0`).
    pub trivial_sector: usize,
    /// Index of the trivial sector of `A*` (`χ̂_a(ĥ) ≠ 0`).
    pub trivial_dual_sector: usize,
}

impl DistinguishedElements {
    /// `T(x)`.
    pub fn t_of(&self, x: &AlgebraElement) -> AlgebraElement {
        apply_matrix(&self.t_matrix, x)
    }

    /// `χ̂₁` read as an element of `A`.
    pub fn chi_hat_one(&self) -> &AlgebraElement {
        &self.dual_characters_in_a[self.trivial_dual_sector]
    }

    /// `ω(x)` as a real number; `ω` is positive on positive elements.
    pub fn omega_of(&self, x: &AlgebraElement) -> f64 {
        self.omega.apply(x).re
    }
}

fn trivial_index(chars: &[Functional], h: &AlgebraElement) -> Result<usize, EngineError> {
    let hits: Vec<usize> = (0..chars.len())
        .filter(|&a| chars[a].apply(h).norm() > 0.5)
        .collect();
    match hits.as_slice() {
        [a] => Ok(*a),
        _ => Err(EngineError::Check(format!(
            "Haar integral is supported on {} sectors",
            hits.len()
        ))),
    }
}

/// Solve `T(x)Ω₁⊗Ω₂ = Ω₁⊗xΩ₂` for the matrix of `T`.
pub fn solve_t(spec: &WhaSpec, big_omega: &AlgebraElement) -> Result<(CMatrix, f64), EngineError> {
    let n = spec.n();
    let dom = spec.coproduct(big_omega);
    let m = |i: usize, j: usize, k: usize| spec.mult_coeff(i, j, k);
    let lhs = CMatrix::from_fn(n * n, n, |row, k| {
        let (p, q) = (row / n, row % n);
        (0..n).map(|a| m(k, a, p) * dom[(a, q)]).sum()
    });
    let rhs = CMatrix::from_fn(n * n, n, |row, j| {
        let (p, q) = (row / n, row % n);
        (0..n).map(|b| dom[(p, b)] * m(j, b, q)).sum()
    });
    let sol = lstsq(&lhs, &rhs)?;
    if sol.rank < n {
        return Err(EngineError::Degenerate(format!(
            "pulling-through system has rank {} < {n}",
            sol.rank
        )));
    }
    if sol.residual > CONSTRUCTION_TOL {
        return Err(EngineError::Check(format!(
            "pulling-through system is inconsistent (residual {:.3e})",
            sol.residual
        )));
    }
    Ok((sol.solution, sol.residual))
}

/// Left integral `t` with `ĥ(t₁)t₂ = 1` and `tx = tε_s(x)`.
pub fn solve_dual_integral(
    spec: &WhaSpec,
    dual_haar: &Functional,
) -> Result<AlgebraElement, EngineError> {
    let n = spec.n();
    let mut a = CMatrix::zeros(n + n * n, n);
    let mut b = CMatrix::zeros(n + n * n, 1);
    for row in 0..n {
        for k in 0..n {
            a[(row, k)] = (0..n)
                .map(|p| spec.coproduct_coeff(k, p, row) * dual_haar[p])
                .sum();
        }
        b[(row, 0)] = spec.unit()[row];
    }
    for i in 0..n {
        let x = spec.basis(i);
        let blk = &spec.right_mult_matrix(&x) - &spec.right_mult_matrix(&eps_s(spec, &x));
        a.set_block(n + i * n, 0, &blk);
    }
    let sol = lstsq(&a, &b)?;
    if sol.rank < n || sol.residual > CONSTRUCTION_TOL {
        return Err(EngineError::Degenerate(format!(
            "dual integral system: rank {} of {n}, residual {:.3e}",
            sol.rank, sol.residual
        )));
    }
    Ok(AlgebraElement::new(sol.solution.column(0)))
}

/// `(x₁ f(x₂))^{1/2}` for the Haar pair `(x, f)` of an algebra.
fn group_like_left(
    spec: &WhaSpec,
    h: &AlgebraElement,
    f: &Functional,
) -> Result<AlgebraElement, EngineError> {
    let n = spec.n();
    let dh = spec.coproduct(h);
    let v = AlgebraElement::new(
        (0..n)
            .map(|a| (0..n).map(|b| dh[(a, b)] * f[b]).sum())
            .collect(),
    );
    sqrt(spec, &v)
}

/// Build every distinguished element of a biconnected algebra.
pub fn distinguished_elements(spec: &WhaSpec) -> Result<DistinguishedElements, EngineError> {
    let n = spec.n();
    let sectors = sectors(spec)?;
    if !sectors.biconnected {
        return Err(EngineError::NotBiconnected(format!(
            "connected = {}, coconnected = {}",
            sectors.connected, sectors.coconnected
        )));
    }
    let dual = dualize(spec)?;
    let dual_sectors = sector_basics(&dual)?;
    let d2 = sectors.d2;
    let d2_hat = dual_sectors.d2;
    let eps_one = spec.counit_of(&spec.unit()).re;

    let mut omega = Functional::zeros(n);
    for (chi, &d) in sectors.characters.iter().zip(&sectors.fp_dims) {
        omega.axpy(c64(d / d2, 0.0), chi);
    }
    let mut big_omega = AlgebraElement::zeros(n);
    for (chi, &d) in dual_sectors.characters.iter().zip(&dual_sectors.fp_dims) {
        big_omega.axpy(c64(d / d2, 0.0), &chi.to_element());
    }
    let mut c_omega = AlgebraElement::zeros(n);
    for a in 0..sectors.r() {
        let w = sectors.fp_dims[a] / sectors.multiplicities[a] / d2;
        c_omega.axpy(c64(w, 0.0), &sectors.central_idempotents[a]);
    }

    let haar = haar_integral(spec)?;
    let dual_haar = haar_integral(&dual)?.to_functional();
    let trivial_sector = trivial_index(&sectors.characters, &haar)?;
    let trivial_dual_sector = trivial_index(&dual_sectors.characters, &dual_haar.to_element())?;

    let (t_matrix, t_solve_residual) = solve_t(spec, &big_omega)?;

    let dom = spec.coproduct(&big_omega);
    let xi_inv = AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| dom[(a, b)] * omega[a]).sum())
            .collect(),
    );
    let xi = inverse(spec, &xi_inv)?;

    let g_l = group_like_left(spec, &haar, &dual_haar)?;
    let g_r = apply_matrix(spec.antipode_matrix(), &g_l);
    let g = spec.mul(&g_l, &inverse(spec, &g_r)?);
    let ghat_l_el = group_like_left(&dual, &dual_haar.to_element(), &haar.to_functional())?;
    let ghat_r_el = apply_matrix(dual.antipode_matrix(), &ghat_l_el);
    let ghat = dual
        .mul(&ghat_l_el, &inverse(&dual, &ghat_r_el)?)
        .to_functional();
    let scale = c64(d2 * eps_one, 0.0);
    let xi_l = g_l.scale(scale);
    let xi_r = g_r.scale(scale);

    let t_dual_integral = solve_dual_integral(spec, &dual_haar)?;
    let w = spec.mul(&inverse(spec, &g_l)?, &inverse(spec, &g_r)?);
    let tau = compose_functional(&dual_haar, &spec.left_mult_matrix(&w));

    let out = DistinguishedElements {
        dual_characters_in_a: dual_sectors
            .characters
            .iter()
            .map(|c| c.to_element())
            .collect(),
        dual_fp_dims: dual_sectors.fp_dims.clone(),
        sectors,
        dual,
        dual_sectors,
        d2,
        d2_hat,
        eps_one,
        omega,
        big_omega,
        haar,
        dual_haar,
        g_l,
        g_r,
        g,
        ghat_l: ghat_l_el.to_functional(),
        ghat_r: ghat_r_el.to_functional(),
        ghat,
        xi,
        xi_inv,
        xi_l,
        xi_r,
        c_omega,
        t_matrix,
        t_solve_residual,
        t_dual_integral,
        tau,
        trivial_sector,
        trivial_dual_sector,
    };
    for (name, r) in crate::identities::core_invariants(spec, &out)? {
        if r > CONSTRUCTION_TOL {
            return Err(EngineError::Check(format!("{name} residual {r:.3e}")));
        }
    }
    Ok(out)
}

/// Functionals `μ`, `μ'` with `μ(a₁)a₂ = x = a₁μ'(a₂)`.
pub fn radon_nikodym(
    spec: &WhaSpec,
    x: &AlgebraElement,
    against: &AlgebraElement,
) -> Result<(Functional, Functional), EngineError> {
    let n = spec.n();
    let da = spec.coproduct(against);
    let rhs = CMatrix::from_vec(n, 1, x.coeffs().to_vec())?;
    let solve = |m: &CMatrix| -> Result<Functional, EngineError> {
        let sol = lstsq(m, &rhs)?;
        if sol.rank < n {
            return Err(EngineError::Degenerate(format!(
                "coproduct of the reference element has rank {} < {n}",
                sol.rank
            )));
        }
        if sol.residual > tol::STRUCTURAL {
            return Err(EngineError::Check(format!(
                "Radon–Nikodym system residual {:.3e}",
                sol.residual
            )));
        }
        Ok(Functional::new(sol.solution.column(0)))
    };
    Ok((solve(&da.transpose())?, solve(&da)?))
}
