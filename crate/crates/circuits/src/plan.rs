//! Depth-two circuit plans and their execution on dense states.

use algebra_spec::{AlgebraElement, WhaSpec};
use channels::{glue_hopf, glue_trivial, unit_coproduct_defect, Channel};
use mpdo::{build_rho, EIG_DIM_LIMIT, STATE_TOL};
use numeric_core::{lstsq, min_eigenvalue, tol, CMatrix};
use serde::{Deserialize, Serialize};
use wha_engine::DistinguishedElements;

use crate::error::CircuitError;

/// Element family a plan prepares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// Any positive element of a Hopf algebra, glued with `𝒢_Ω … 𝒢_Ω, 𝒢_x`.
    Hopf,
    /// The unit of a weak Hopf algebra, glued with a chain of `𝒢₁`.
    WeakUnit,
    /// The trivial dual character `χ̂₁` of a weak Hopf algebra. Blocks are
    /// seeded with `ρ_k(χ̂₁)` and glued with `𝒢₁`; the result is measured,
    /// not guaranteed.
    WeakChiHat,
}

/// One channel acting on the consecutive sites `first..first+span`.
#[derive(Clone, Debug)]
pub struct Gate {
    /// First site acted on.
    pub first: usize,
    /// Number of sites acted on.
    pub span: usize,
    /// The channel, with `d_in = d_out = d^span`.
    pub channel: Channel,
}

/// Two layers of gates on `n_sites` sites of dimension `site_dim`.
#[derive(Clone, Debug)]
pub struct CircuitPlan {
    /// Number of sites.
    pub n_sites: usize,
    /// Dimension of one site.
    pub site_dim: usize,
    /// Element family being prepared.
    pub target: Target,
    /// Replacement channels `X ↦ tr(X)ρ_k`, one per block.
    pub layer1: Vec<Gate>,
    /// Gluing channels at the block boundaries.
    pub layer2: Vec<Gate>,
    /// Index in `layer2` of the gate carrying `x`, if any.
    pub x_slot: Option<usize>,
}

impl CircuitPlan {
    /// Block lengths of the first layer.
    pub fn blocks(&self) -> Vec<usize> {
        self.layer1.iter().map(|g| g.span).collect()
    }
}

/// Block lengths: pairs, with one leading triple when `n` is odd.
pub fn block_lengths(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        std::iter::once(3)
            .chain(std::iter::repeat(2).take((n - 3) / 2))
            .collect()
    } else {
        vec![2; n / 2]
    }
}

/// Relative distance of `x` from the line through `y`.
fn distance_from_line(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64, CircuitError> {
    let a = CMatrix::from_vec(y.len(), 1, y.coeffs().to_vec())?;
    let b = CMatrix::from_vec(x.len(), 1, x.coeffs().to_vec())?;
    let sol = lstsq(&a, &b)?;
    Ok(sol.residual
        / x.coeffs()
            .iter()
            .map(|z| z.norm())
            .fold(f64::MIN_POSITIVE, f64::max))
}

/// Classify `x` for `spec`: any element for Hopf algebras, otherwise a
/// multiple of `1` or of `χ̂₁`.
pub fn classify_target(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
) -> Result<Target, CircuitError> {
    if unit_coproduct_defect(spec) <= tol::STRUCTURAL {
        return Ok(Target::Hopf);
    }
    if distance_from_line(x, &spec.unit())? <= tol::STRUCTURAL {
        return Ok(Target::WeakUnit);
    }
    let chi = &d.dual_characters_in_a[d.trivial_dual_sector];
    if distance_from_line(x, chi)? <= tol::STRUCTURAL {
        return Ok(Target::WeakChiHat);
    }
    Err(CircuitError::UnsupportedElement(
        "a proper weak Hopf algebra supports only multiples of 1 and of the trivial dual character"
            .into(),
    ))
}

/// Plan the depth-two circuit preparing `ρ_n(x)`.
///
/// Layer one replaces each block by `ρ_k(seed)`, with seed `Ω` (Hopf),
/// `1` or `χ̂₁`. Layer two glues every block boundary; for Hopf algebras
/// the last boundary uses `𝒢_x` and the others `𝒢_Ω`. A single block is
/// replaced by `ρ_n(x)` directly.
pub fn plan_depth_two(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    n: usize,
) -> Result<CircuitPlan, CircuitError> {
    if n < 2 {
        return Err(CircuitError::Dimension(
            "a circuit needs at least two sites".into(),
        ));
    }
    let target = classify_target(spec, d, x)?;
    let dim = spec.rep_dim();
    let blocks = block_lengths(n);
    let seed = match target {
        Target::Hopf => d.big_omega.clone(),
        Target::WeakUnit => spec.unit(),
        Target::WeakChiHat => x.clone(),
    };
    let mut layer1 = Vec::with_capacity(blocks.len());
    let mut first = 0;
    for &k in &blocks {
        let block_seed = if blocks.len() == 1 { x } else { &seed };
        let state = build_rho(spec, d, block_seed, k)?.rho;
        let label = format!("init rho_{k}");
        layer1.push(Gate {
            first,
            span: k,
            channel: Channel::replacement(label, dim.pow(k as u32), &state)?,
        });
        first += k;
    }
    let mut layer2 = Vec::new();
    let mut x_slot = None;
    if blocks.len() > 1 {
        let (bulk, last) = match target {
            Target::Hopf => (glue_hopf(spec, d, &d.big_omega)?, glue_hopf(spec, d, x)?),
            Target::WeakUnit | Target::WeakChiHat => {
                let g = glue_trivial(spec, d)?;
                (g.clone(), g)
            }
        };
        let mut end = 0;
        for (j, &k) in blocks[..blocks.len() - 1].iter().enumerate() {
            end += k;
            let is_last = j + 2 == blocks.len();
            layer2.push(Gate {
                first: end - 1,
                span: 2,
                channel: if is_last { last.clone() } else { bulk.clone() },
            });
        }
        if target == Target::Hopf {
            x_slot = Some(layer2.len() - 1);
        }
    }
    Ok(CircuitPlan {
        n_sites: n,
        site_dim: dim,
        target,
        layer1,
        layer2,
        x_slot,
    })
}

/// Order in which the two layers are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerOrder {
    /// Initialization first, then gluing.
    Standard,
    /// Gluing first, then initialization.
    Swapped,
}

fn apply_layer(
    plan: &CircuitPlan,
    layer: &[Gate],
    mut rho: CMatrix,
) -> Result<CMatrix, CircuitError> {
    let dims = vec![plan.site_dim; plan.n_sites];
    for gate in layer {
        let out = vec![plan.site_dim; gate.span];
        rho = gate
            .channel
            .apply_on_sites(&rho, &dims, gate.first, gate.span, &out)?;
    }
    Ok(rho)
}

/// Apply both layers in the given order without checking the output.
pub fn run_layers(
    plan: &CircuitPlan,
    input: &CMatrix,
    order: LayerOrder,
) -> Result<CMatrix, CircuitError> {
    let expected = plan.site_dim.pow(plan.n_sites as u32);
    if input.rows() != expected || input.cols() != expected {
        return Err(CircuitError::Dimension(format!(
            "input is {}x{}, the plan acts on dimension {expected}",
            input.rows(),
            input.cols()
        )));
    }
    let (a, b) = match order {
        LayerOrder::Standard => (&plan.layer1, &plan.layer2),
        LayerOrder::Swapped => (&plan.layer2, &plan.layer1),
    };
    let mid = apply_layer(plan, a, input.clone())?;
    apply_layer(plan, b, mid)
}

/// Apply layer one, then layer two, and check that the output is a state.
///
/// Hermiticity and unit trace are checked to [`STATE_TOL`]; positivity is
/// checked by an eigen-solve up to dimension [`EIG_DIM_LIMIT`].
pub fn run_circuit(plan: &CircuitPlan, input: &CMatrix) -> Result<CMatrix, CircuitError> {
    let out = run_layers(plan, input, LayerOrder::Standard)?;
    let herm = out.hermitian_deviation();
    let trace_err = (out.trace() - input.trace()).norm();
    if herm > STATE_TOL || trace_err > STATE_TOL {
        return Err(CircuitError::NotState(format!(
            "hermitian deviation {herm:.3e}, trace error {trace_err:.3e}"
        )));
    }
    if out.rows() <= EIG_DIM_LIMIT {
        let min = min_eigenvalue(&out.hermitian_part())?;
        if min < -STATE_TOL {
            return Err(CircuitError::NotState(format!("eigenvalue {min:.3e}")));
        }
    }
    Ok(out)
}

/// The maximally mixed state on `n` sites of dimension `dim`.
pub fn maximally_mixed(dim: usize, n: usize) -> CMatrix {
    let total = dim.pow(n as u32);
    CMatrix::identity(total).scale_real(1.0 / total as f64)
}
