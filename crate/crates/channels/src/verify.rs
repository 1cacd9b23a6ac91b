//! Checks of the fixed-point, gluing and no-gluing statements.

use std::cell::OnceCell;

use algebra_spec::{AlgebraElement, WhaSpec};
use mpdo::{build_rho, weighted_factors, EIG_DIM_LIMIT};
use numeric_core::{
    c64, lstsq, partial_trace, trace_distance, trace_distance_bound, trace_norm, CMatrix, C64,
};
use serde::{Deserialize, Serialize};
use wha_engine::{check_budget, delta_power, DistinguishedElements};

use crate::channel::Channel;
use crate::error::ChannelError;

/// Trace distance, exact up to dimension [`EIG_DIM_LIMIT`] and the bound
/// `½√d‖a − b‖_F` above it. The flag tells whether the value is exact.
pub fn state_distance(a: &CMatrix, b: &CMatrix) -> Result<(f64, bool), ChannelError> {
    if a.rows() <= EIG_DIM_LIMIT {
        Ok((
            trace_distance(&a.hermitian_part(), &b.hermitian_part())?,
            true,
        ))
    } else {
        Ok((trace_distance_bound(a, b)?, false))
    }
}

/// Result of [`rfp_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfpReport {
    /// Trace distance between `𝒯(ρ₁(x))` and `ρ₂(x)`.
    pub coarse_distance: f64,
    /// Trace distance between `𝒮(ρ₂(x))` and `ρ₁(x)`.
    pub fine_distance: f64,
}

/// Compare `𝒯(ρ₁(x))` with `ρ₂(x)` and `𝒮(ρ₂(x))` with `ρ₁(x)`.
pub fn rfp_check(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    coarse: &Channel,
    fine: &Channel,
) -> Result<RfpReport, ChannelError> {
    let r1 = build_rho(spec, d, x, 1)?.rho;
    let r2 = build_rho(spec, d, x, 2)?.rho;
    Ok(RfpReport {
        coarse_distance: state_distance(&coarse.apply(&r1)?, &r2)?.0,
        fine_distance: state_distance(&fine.apply(&r2)?, &r1)?.0,
    })
}

/// How a gluing identity was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlueMethod {
    /// Dense density matrices with an exact trace distance.
    Dense,
    /// Algebra coefficient tensors with a certified trace-distance bound.
    Coefficient,
}

/// Result of [`gluing_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlueReport {
    /// Sites of the left block.
    pub m: usize,
    /// Sites of the right block.
    pub n: usize,
    /// Checking method.
    pub method: GlueMethod,
    /// Trace distance, or its certified upper bound for [`GlueMethod::Coefficient`].
    pub distance: f64,
    /// For [`GlueMethod::Coefficient`]: `‖Δz‖₁` between coefficient tensors.
    pub coefficient_residual: Option<f64>,
    /// For [`GlueMethod::Coefficient`]: residual of expressing the channel outputs in the weighted basis.
    pub span_residual: Option<f64>,
}

/// Apply `glue` at sites `(m−1, m)` of `ρ_m(seed)⊗ρ_n(seed)` and compare with `ρ_{m+n}(x)`.
///
/// The check is dense while `ρ_{m+n}` has dimension at most
/// [`EIG_DIM_LIMIT`]. Beyond that it runs on coefficient tensors: every
/// state involved is `φ^{⊗k}(c_ω^{⊗k} z)` for a tensor `z` over `A^{⊗k}`,
/// and this map is injective, so the glued and target tensors are compared
/// directly. The reported distance is then
/// `½‖Δz‖₁ (max_i √d‖φ(c_ω e_i)‖_F)^{m+n}`, an upper bound on the trace
/// distance because `√d‖·‖_F` bounds the trace norm on each site.
pub fn gluing_check(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    glue: &Channel,
    seed: &AlgebraElement,
    x: &AlgebraElement,
    m: usize,
    n: usize,
) -> Result<GlueReport, ChannelError> {
    GluingChecker::new(spec, d, glue).check(seed, x, m, n)
}

/// Repeated gluing checks of one channel, fitting its two-site coefficient
/// map at most once.
pub struct GluingChecker<'a> {
    spec: &'a WhaSpec,
    d: &'a DistinguishedElements,
    glue: &'a Channel,
    coefficient_map: OnceCell<(CMatrix, f64)>,
}

impl<'a> GluingChecker<'a> {
    /// A checker for `glue`.
    pub fn new(spec: &'a WhaSpec, d: &'a DistinguishedElements, glue: &'a Channel) -> Self {
        GluingChecker {
            spec,
            d,
            glue,
            coefficient_map: OnceCell::new(),
        }
    }

    fn coefficient_map(&self) -> Result<&(CMatrix, f64), ChannelError> {
        if let Some(k) = self.coefficient_map.get() {
            return Ok(k);
        }
        let k = two_site_coefficient_map(self.spec, self.d, self.glue)?;
        Ok(self.coefficient_map.get_or_init(|| k))
    }

    /// See [`gluing_check`].
    pub fn check(
        &self,
        seed: &AlgebraElement,
        x: &AlgebraElement,
        m: usize,
        n: usize,
    ) -> Result<GlueReport, ChannelError> {
        let (spec, d, glue) = (self.spec, self.d, self.glue);
        if m == 0 || n == 0 {
            return Err(ChannelError::Dimension(
                "gluing needs two non-empty blocks".into(),
            ));
        }
        let dim = spec.rep_dim();
        if dim.pow((m + n) as u32) <= EIG_DIM_LIMIT {
            let left = build_rho(spec, d, seed, m)?.rho;
            let right = build_rho(spec, d, seed, n)?.rho;
            let glued =
                glue.apply_on_sites(&left.kron(&right), &vec![dim; m + n], m - 1, 2, &[dim, dim])?;
            let target = build_rho(spec, d, x, m + n)?.rho;
            return Ok(GlueReport {
                m,
                n,
                method: GlueMethod::Dense,
                distance: state_distance(&glued, &target)?.0,
                coefficient_residual: None,
                span_residual: None,
            });
        }
        let (k, span_residual) = self.coefficient_map()?;
        let span_residual = *span_residual;
        if span_residual > 1e-9 {
            return Err(ChannelError::OutsideSpan(span_residual));
        }
        let na = spec.n();
        let total = (na as u128).pow((m + n) as u32);
        check_budget(total)?;
        let ws = d.omega.apply(seed).re;
        let wx = d.omega.apply(x).re;
        let zl = delta_power(spec, seed, m - 1)?;
        let zr = delta_power(spec, seed, n - 1)?;
        let pre = na.pow((m - 1) as u32);
        let post = na.pow((n - 1) as u32);
        // Input tensor (pre, j, post) with j the pair of glued indices.
        let mut glued = vec![c64(0.0, 0.0); total as usize];
        for p in 0..pre {
            for a in 0..na {
                let l = zl[p * na + a] / ws;
                if l == c64(0.0, 0.0) {
                    continue;
                }
                for b in 0..na {
                    for q in 0..post {
                        let r = zr[b * post + q] / ws;
                        if r == c64(0.0, 0.0) {
                            continue;
                        }
                        let v = l * r;
                        let j = a * na + b;
                        for jo in 0..na * na {
                            let kv = k[(jo, j)];
                            if kv != c64(0.0, 0.0) {
                                glued[(p * na * na + jo) * post + q] += kv * v;
                            }
                        }
                    }
                }
            }
        }
        let target = delta_power(spec, x, m + n - 1)?;
        let l1: f64 = glued
            .iter()
            .zip(&target)
            .map(|(g, t)| (g - t / wx).norm())
            .sum();
        let wmax = weighted_factors(spec, d)
            .iter()
            .map(|w| (dim as f64).sqrt() * w.frobenius_norm())
            .fold(0.0, f64::max);
        Ok(GlueReport {
            m,
            n,
            method: GlueMethod::Coefficient,
            distance: 0.5 * l1 * wmax.powi((m + n) as i32),
            coefficient_residual: Some(l1),
            span_residual: Some(span_residual),
        })
    }
}

/// Matrix `K` with `ch(φ(c_ωe_a)⊗φ(c_ωe_b)) = Σ K[(a',b'),(a,b)] φ(c_ωe_{a'})⊗φ(c_ωe_{b'})`,
/// with the relative residual of the fit.
pub fn two_site_coefficient_map(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    ch: &Channel,
) -> Result<(CMatrix, f64), ChannelError> {
    let na = spec.n();
    let dim = spec.rep_dim();
    if ch.d_in != dim * dim || ch.d_out != dim * dim {
        return Err(ChannelError::Dimension(
            "two-site coefficient map needs a channel on V⊗V".into(),
        ));
    }
    let w = weighted_factors(spec, d);
    let basis: Vec<CMatrix> = (0..na * na).map(|j| w[j / na].kron(&w[j % na])).collect();
    let cols: Vec<Vec<C64>> = basis.iter().map(|b| b.data().to_vec()).collect();
    let bmat = CMatrix::from_columns(&cols);
    let outs: Vec<Vec<C64>> = basis
        .iter()
        .map(|b| ch.apply(b).map(|o| o.into_data()))
        .collect::<Result<_, _>>()?;
    let rhs = CMatrix::from_columns(&outs);
    let sol = lstsq(&bmat, &rhs)?;
    Ok((
        sol.solution,
        sol.residual / rhs.max_abs().max(f64::MIN_POSITIVE),
    ))
}

/// The two sides of the no-gluing comparison.
#[derive(Clone, Debug)]
pub struct NoGluingWitness {
    /// `tr_{2,3}(ρ₂(Ω)⊗ρ₂(Ω))`, a product state.
    pub lhs: CMatrix,
    /// `tr_{3,4}(ρ₄(Ω))`.
    pub rhs: CMatrix,
    /// Trace distance between the two sides.
    pub distance: f64,
    /// `‖rhs − tr₂(rhs)⊗tr₁(rhs)‖₁`.
    pub product_deviation: f64,
}

/// Compare the outer-site marginal of two glued blocks with the two-site
/// marginal of the longer state.
pub fn no_gluing_witness(
    spec: &WhaSpec,
    d: &DistinguishedElements,
) -> Result<NoGluingWitness, ChannelError> {
    let dim = spec.rep_dim();
    let r2 = build_rho(spec, d, &d.big_omega, 2)?.rho;
    let r4 = build_rho(spec, d, &d.big_omega, 4)?.rho;
    let sites = [dim; 4];
    let lhs = partial_trace(&r2.kron(&r2), &sites, &[0, 3])?;
    let rhs = partial_trace(&r4, &sites, &[0, 1])?;
    let a = partial_trace(&rhs, &[dim, dim], &[0])?;
    let b = partial_trace(&rhs, &[dim, dim], &[1])?;
    Ok(NoGluingWitness {
        distance: trace_distance(&lhs.hermitian_part(), &rhs.hermitian_part())?,
        product_deviation: trace_norm(&(&rhs - &a.kron(&b)).hermitian_part())?,
        lhs,
        rhs,
    })
}
