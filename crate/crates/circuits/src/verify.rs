//! Trivial-phase verification, the layer-order check and gluing associativity.

use std::time::Instant;

use algebra_spec::{AlgebraElement, WhaSpec};
use channels::{glue_hopf, state_distance, two_site_coefficient_map};
use mpdo::{build_rho, weighted_factors};
use numeric_core::{c64, CMatrix, C64};
use serde::{Deserialize, Serialize};
use wha_engine::{check_budget, delta_power, DistinguishedElements};

use crate::error::CircuitError;
use crate::plan::{maximally_mixed, plan_depth_two, run_circuit, run_layers, LayerOrder, Target};

/// Result of [`verify_trivial_phase`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialPhaseReport {
    /// Number of sites.
    pub n_sites: usize,
    /// Element family of the plan.
    pub target: Target,
    /// Block lengths of the first layer.
    pub blocks: Vec<usize>,
    /// Number of gluing gates.
    pub glues: usize,
    /// Trace distance between the circuit output and `ρ_N(x)`.
    pub distance: f64,
    /// Whether `distance` is exact rather than the Frobenius bound.
    pub exact: bool,
    /// Wall-clock seconds for planning, running and comparing.
    pub runtime_secs: f64,
}

/// Run the depth-two circuit on the maximally mixed state and compare the
/// output with `ρ_N(x)`.
pub fn verify_trivial_phase(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n: usize,
) -> Result<TrivialPhaseReport, CircuitError> {
    let start = Instant::now();
    let dim = spec.rep_dim();
    check_budget((dim as u128).pow(2 * n as u32))?;
    let plan = plan_depth_two(spec, d, x, n)?;
    let out = run_circuit(&plan, &maximally_mixed(dim, n))?;
    let target = build_rho(spec, d, x, n)?.rho;
    let (distance, exact) = state_distance(&out, &target)?;
    Ok(TrivialPhaseReport {
        n_sites: n,
        target: plan.target,
        blocks: plan.blocks(),
        glues: plan.layer2.len(),
        distance,
        exact,
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}

/// Trace distance between `ρ_N(x)` and the output of the circuit with its
/// two layers swapped, on the maximally mixed input.
pub fn layer_swap_distance(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n: usize,
) -> Result<f64, CircuitError> {
    let dim = spec.rep_dim();
    check_budget((dim as u128).pow(2 * n as u32))?;
    let plan = plan_depth_two(spec, d, x, n)?;
    let out = run_layers(&plan, &maximally_mixed(dim, n), LayerOrder::Swapped)?;
    let target = build_rho(spec, d, x, n)?.rho;
    Ok(state_distance(&out, &target)?.0)
}

/// Result of [`gluing_associativity`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssociativityReport {
    /// Trace-distance bound between the two gluing orders.
    pub order_distance: f64,
    /// Trace-distance bound between the left-first order and `ρ₆(x)`.
    pub target_distance: f64,
    /// `‖Δz‖₁` between the coefficient tensors of the two orders.
    pub coefficient_residual: f64,
}

/// Apply a two-site coefficient map `k` at sites `(p, p+1)` of a tensor over `n^sites`.
fn apply_at(z: &[C64], k: &CMatrix, na: usize, sites: usize, p: usize) -> Vec<C64> {
    let pre = na.pow(p as u32);
    let post = na.pow((sites - p - 2) as u32);
    let mut out = vec![c64(0.0, 0.0); z.len()];
    for a in 0..pre {
        for j in 0..na * na {
            for q in 0..post {
                let v = z[(a * na * na + j) * post + q];
                if v == c64(0.0, 0.0) {
                    continue;
                }
                for jo in 0..na * na {
                    let kv = k[(jo, j)];
                    if kv != c64(0.0, 0.0) {
                        out[(a * na * na + jo) * post + q] += kv * v;
                    }
                }
            }
        }
    }
    out
}

/// Glue three two-site blocks `ρ₂(Ω)` into `ρ₆(x)` in both orders.
///
/// Left first: `𝒢_Ω` at sites `(1, 2)`, then `𝒢_x` at `(3, 4)`. Right
/// first: `𝒢_Ω` at `(3, 4)`, then `𝒢_x` at `(1, 2)`. Both runs act on
/// coefficient tensors over `A^{⊗6}`, and distances are the certified bounds
/// `½‖Δz‖₁ (max_i √d‖φ(c_ω e_i)‖_F)⁶`.
pub fn gluing_associativity(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
) -> Result<AssociativityReport, CircuitError> {
    let na = spec.n();
    check_budget((na as u128).pow(6))?;
    let (k_omega, r1) = two_site_coefficient_map(spec, d, &glue_hopf(spec, d, &d.big_omega)?)?;
    let (k_x, r2) = two_site_coefficient_map(spec, d, &glue_hopf(spec, d, x)?)?;
    let span = r1.max(r2);
    if span > 1e-9 {
        return Err(channels::ChannelError::OutsideSpan(span).into());
    }
    let w_omega = d.omega.apply(&d.big_omega).re;
    let block: Vec<C64> = delta_power(spec, &d.big_omega, 1)?
        .into_iter()
        .map(|v| v / w_omega)
        .collect();
    let mut z = vec![c64(1.0, 0.0)];
    for _ in 0..3 {
        z = z
            .iter()
            .flat_map(|&a| block.iter().map(move |&b| a * b))
            .collect();
    }
    let left = apply_at(&apply_at(&z, &k_omega, na, 6, 1), &k_x, na, 6, 3);
    let right = apply_at(&apply_at(&z, &k_omega, na, 6, 3), &k_x, na, 6, 1);
    let wx = d.omega.apply(x).re;
    let target = delta_power(spec, x, 5)?;
    let l1 = |a: &[C64], b: &[C64]| -> f64 { a.iter().zip(b).map(|(p, q)| (p - q).norm()).sum() };
    let order = l1(&left, &right);
    let to_target: f64 = left
        .iter()
        .zip(&target)
        .map(|(p, t)| (p - t / wx).norm())
        .sum();
    let dim = spec.rep_dim() as f64;
    let wmax = weighted_factors(spec, d)
        .iter()
        .map(|w| dim.sqrt() * w.frobenius_norm())
        .fold(0.0, f64::max);
    let factor = 0.5 * wmax.powi(6);
    Ok(AssociativityReport {
        order_distance: factor * order,
        target_distance: factor * to_target,
        coefficient_residual: order,
    })
}
