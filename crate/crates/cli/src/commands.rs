//! Command implementations. Each returns a [`RunReport`].

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use algebra_spec::{AlgebraElement, SpecError, WhaSpec};
use channels::{
    coarse_grain, fine_grain, glue_hopf, glue_trivial, no_gluing_witness, rfp_check,
    unit_coproduct_defect, Channel, ChannelError, GlueMethod, GluingChecker,
};
use circuits::{layer_swap_distance, verify_trivial_phase, CircuitError, Target};
use mpdo::{build_rho, write_matrix, MpdoError, StateMetadata, EIG_DIM_LIMIT};
use numeric_core::{hermitian_eigenvalues, tol, CMatrix, NumericError, C64};
use serde::Serialize;
use sha2::{Digest, Sha256};
use wha_engine::{
    core_invariants, distinguished_elements, hopf_specialization_report, identity_suite, sectors,
    validate_axioms_with, DistinguishedElements, EngineError, IDENTITY_TOL,
};

use crate::report::{hex, RunReport};
use crate::select::{random_positive, XSelector};

/// Failures that prevent a report from being produced.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input, unsupported request or budget refusal (exit code 2).
    Input(String),
    /// A computation failed on valid input (exit code 1).
    Compute(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Budget { .. }
            | EngineError::NotHopf(_)
            | EngineError::NotBiconnected(_) => CliError::Input(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<MpdoError> for CliError {
    fn from(e: MpdoError) -> Self {
        if e.is_budget() || matches!(e, MpdoError::NotPositive(_) | MpdoError::Sites(_)) {
            CliError::Input(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::Mpdo(m) => m.into(),
            ChannelError::Engine(m) => m.into(),
            ChannelError::NotHopf(_) | ChannelError::NotState(_) => CliError::Input(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::Mpdo(m) => m.into(),
            CircuitError::Engine(m) => m.into(),
            CircuitError::Channel(m) => m.into(),
            CircuitError::UnsupportedElement(_) | CircuitError::Dimension(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

/// Inputs shared by every command.
#[derive(Clone, Debug)]
pub struct Context {
    /// Command-line arguments after the program name.
    pub command: Vec<String>,
    /// The loaded algebra.
    pub spec: WhaSpec,
    /// Tolerance override.
    pub tol: Option<f64>,
    /// Seed of the random positive element.
    pub seed: u64,
    /// Whether timings are recorded.
    pub timings: bool,
}

impl Context {
    fn report(&self) -> RunReport {
        RunReport::new(self.command.clone(), &self.spec, self.timings)
    }

    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn is_hopf(&self) -> bool {
        unit_coproduct_defect(&self.spec) <= tol::STRUCTURAL
    }
}

/// Verification suites of the `verify` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Coarse- and fine-graining fixed points with CPTP checks.
    Rfp,
    /// Gluing identities for block sizes up to three.
    Glue,
    /// The depth-two trivial-phase circuit.
    Circuit,
    /// Hopf specializations of the distinguished elements.
    HopfSpecial,
    /// The identity residual suite.
    Identities,
}

fn pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn element(x: &AlgebraElement) -> Vec<[f64; 2]> {
    pairs(x.coeffs())
}

fn spectrum(m: &CMatrix) -> Result<Vec<f64>, CliError> {
    Ok(hermitian_eigenvalues(&m.hermitian_part())?)
}

fn distinguished(spec: &WhaSpec) -> Result<DistinguishedElements, CliError> {
    Ok(distinguished_elements(spec)?)
}

/// Axioms and derived antipode properties.
pub fn cmd_validate(ctx: &Context) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut r = ctx.report();
    let t = ctx.tol_or(tol::STRUCTURAL);
    let ax = validate_axioms_with(&ctx.spec, t);
    for (k, v) in &ax.axioms {
        r.at_most(format!("axiom.{k}"), *v, t);
    }
    for (k, v) in &ax.derived_checks {
        r.at_most(format!("derived.{k}"), *v, t);
    }
    r.measure("hopf_axioms", &ax.hopf_axioms);
    r.measure("is_weak_hopf", ax.is_weak_hopf);
    r.measure("is_hopf", ax.is_hopf);
    r.measure("dim", ctx.spec.n());
    r.measure("rep_dim", ctx.spec.rep_dim());
    r.time("validate", start);
    Ok(r)
}

#[derive(Serialize)]
struct DistinguishedSummary {
    big_omega: Vec<[f64; 2]>,
    haar: Vec<[f64; 2]>,
    xi: Vec<[f64; 2]>,
    c_omega: Vec<[f64; 2]>,
    c_omega_spectrum: Vec<f64>,
    omega_of_big_omega: f64,
    chihat1: Vec<[f64; 2]>,
    trivial_sector: usize,
    trivial_dual_sector: usize,
    dual_fp_dims: Vec<f64>,
    d2_hat: f64,
    eps_one: f64,
}

/// Sectors, fusion rules, dimensions, connectedness and the distinguished elements.
pub fn cmd_info(ctx: &Context) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let spec = &ctx.spec;
    let mut r = ctx.report();
    let sec = sectors(spec)?;
    r.measure(
        "sector_order",
        "ascending irrep dimension, then lexicographic support of the central idempotent, then descending coefficients",
    );
    r.measure("irrep_dims", &sec.irrep_dims);
    r.measure("multiplicities", &sec.multiplicities);
    r.measure("fusion", &sec.fusion);
    r.measure("fp_dims", &sec.fp_dims);
    r.measure("d2", sec.d2);
    r.measure("connected", sec.connected);
    r.measure("coconnected", sec.coconnected);
    r.measure("biconnected", sec.biconnected);
    r.measure("is_hopf", ctx.is_hopf());
    r.at_most(
        "fusion_integrality_gap",
        sec.fusion_integrality_gap,
        ctx.tol_or(1e-4),
    );
    r.at_most("biconnected", if sec.biconnected { 0.0 } else { 1.0 }, 0.0);
    r.time("sectors", start);
    if sec.biconnected {
        let start = Instant::now();
        let d = distinguished(spec)?;
        r.at_most("t_solve_residual", d.t_solve_residual, ctx.tol_or(1e-9));
        r.measure(
            "distinguished",
            DistinguishedSummary {
                big_omega: element(&d.big_omega),
                haar: element(&d.haar),
                xi: element(&d.xi),
                c_omega: element(&d.c_omega),
                c_omega_spectrum: spectrum(&spec.phi(&d.c_omega))?,
                omega_of_big_omega: d.omega.apply(&d.big_omega).re,
                chihat1: element(&d.dual_characters_in_a[d.trivial_dual_sector]),
                trivial_sector: d.trivial_sector,
                trivial_dual_sector: d.trivial_dual_sector,
                dual_fp_dims: d.dual_fp_dims.clone(),
                d2_hat: d.d2_hat,
                eps_one: d.eps_one,
            },
        );
        r.time("distinguished", start);
    }
    Ok(r)
}

/// Write a JSON header line followed by the little-endian matrix entries.
fn write_dump(path: &Path, meta: &StateMetadata, rho: &CMatrix) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let mut bytes = serde_json::to_vec(meta).map_err(|e| CliError::Compute(e.to_string()))?;
    bytes.push(b'\n');
    write_matrix(&mut bytes, rho)?;
    let mut file = std::fs::File::create(path).map_err(io)?;
    file.write_all(&bytes).map_err(io)?;
    Ok(hex(&Sha256::digest(&bytes)))
}

/// Build `ρ_N(x)`, check it is a state and optionally dump it.
pub fn cmd_mpdo(
    ctx: &Context,
    x: &XSelector,
    n: usize,
    out: Option<&Path>,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let spec = &ctx.spec;
    let mut r = ctx.report();
    let d = distinguished(spec)?;
    let xe = x.resolve(spec, &d)?;
    let state = build_rho(spec, &d, &xe, n)?.with_label(x.label());
    r.time("build", start);
    let t = ctx.tol_or(mpdo::STATE_TOL);
    let inv = state.invariants()?;
    r.at_most("hermitian", inv.hermitian, t);
    r.at_most("trace", inv.trace, t);
    match inv.min_eigenvalue {
        Some(min) => r.at_most("negativity", (-min).max(0.0), t),
        None => r.measure(
            "negativity",
            format!("not computed above dimension {EIG_DIM_LIMIT}"),
        ),
    }
    let meta = StateMetadata::of(&state);
    r.measure("metadata", &meta);
    if let Some(path) = out {
        let start = Instant::now();
        let digest = write_dump(path, &meta, &state.rho)?;
        r.measure("dump_sha256", digest);
        r.time("dump", start);
    }
    Ok(r)
}

fn cptp_checks(r: &mut RunReport, name: &str, ch: &Channel, t: f64) -> Result<(), CliError> {
    let c = ch.cptp()?;
    r.at_most(
        format!("cptp.{name}.choi_negativity"),
        (-c.min_choi_eigenvalue).max(0.0),
        t,
    );
    r.at_most(format!("cptp.{name}.tp_residual"), c.tp_residual, t);
    if c.certified_by_components {
        r.measure(format!("cptp.{name}.certified_by_components"), true);
    }
    Ok(())
}

fn chosen_elements(
    ctx: &Context,
    d: &DistinguishedElements,
    x: Option<&XSelector>,
    defaults: &[&str],
) -> Result<Vec<(String, AlgebraElement)>, CliError> {
    if let Some(sel) = x {
        return Ok(vec![(sel.label(), sel.resolve(&ctx.spec, d)?)]);
    }
    defaults
        .iter()
        .map(|&name| {
            Ok(match name {
                "random" => (
                    format!("random{}", ctx.seed),
                    random_positive(&ctx.spec, ctx.seed),
                ),
                other => {
                    let sel: XSelector = other.parse().expect("infallible");
                    (sel.label(), sel.resolve(&ctx.spec, d)?)
                }
            })
        })
        .collect()
}

/// Run one verification suite.
pub fn cmd_verify(
    ctx: &Context,
    suite: Suite,
    x: Option<&XSelector>,
    n: Option<usize>,
) -> Result<RunReport, CliError> {
    let spec = &ctx.spec;
    let mut r = ctx.report();
    let start = Instant::now();
    let d = distinguished(spec)?;
    r.time("distinguished", start);
    let start = Instant::now();
    match suite {
        Suite::Rfp => {
            let t = ctx.tol_or(1e-9);
            let dim = spec.rep_dim();
            let coarse = coarse_grain(spec, &d)?;
            let fine = fine_grain(
                spec,
                &d,
                &CMatrix::identity(dim).scale_real(1.0 / dim as f64),
            )?;
            cptp_checks(&mut r, "coarse", &coarse, t)?;
            cptp_checks(&mut r, "fine", &fine, t)?;
            for (label, xe) in chosen_elements(ctx, &d, x, &["omega", "unit", "random"])? {
                let rep = rfp_check(spec, &d, &xe, &coarse, &fine)?;
                r.at_most(format!("rfp.{label}.coarse"), rep.coarse_distance, t);
                r.at_most(format!("rfp.{label}.fine"), rep.fine_distance, t);
            }
        }
        Suite::Glue => {
            let t = ctx.tol_or(1e-9);
            let unit = spec.unit();
            let jobs: Vec<(String, AlgebraElement, Channel, AlgebraElement)> = if ctx.is_hopf() {
                chosen_elements(ctx, &d, x, &["omega", "random"])?
                    .into_iter()
                    .map(|(label, xe)| {
                        Ok((label, d.big_omega.clone(), glue_hopf(spec, &d, &xe)?, xe))
                    })
                    .collect::<Result<_, CliError>>()?
            } else {
                vec![("unit".into(), unit.clone(), glue_trivial(spec, &d)?, unit)]
            };
            for (label, seed, glue, xe) in &jobs {
                cptp_checks(&mut r, &format!("glue.{label}"), glue, t)?;
                let checker = GluingChecker::new(spec, &d, glue);
                for m in 1..=3 {
                    for k in 1..=3 {
                        let rep = checker.check(seed, xe, m, k)?;
                        r.at_most(format!("glue.{label}.{m}+{k}"), rep.distance, t);
                        if rep.method == GlueMethod::Coefficient {
                            r.measure(format!("glue.{label}.{m}+{k}.method"), "coefficient bound");
                        }
                    }
                }
            }
        }
        Suite::Circuit => {
            let t = ctx.tol_or(1e-8);
            let n = n.unwrap_or(4);
            let default = if ctx.is_hopf() { "omega" } else { "unit" };
            let (label, xe) = chosen_elements(ctx, &d, x, &[default])?.remove(0);
            let rep = verify_trivial_phase(spec, &d, &xe, n)?;
            r.at_most(format!("circuit.{label}.n{n}"), rep.distance, t);
            r.measure("circuit.blocks", &rep.blocks);
            r.measure("circuit.glues", rep.glues);
            r.measure("circuit.exact_distance", rep.exact);
            r.time("circuit", start);
            if rep.target == Target::WeakUnit {
                let start = Instant::now();
                let chi = d.dual_characters_in_a[d.trivial_dual_sector].clone();
                let attempt = verify_trivial_phase(spec, &d, &chi, n)?;
                r.measure(format!("circuit.chihat1_attempt.n{n}"), attempt.distance);
                r.time("chihat1_attempt", start);
            }
            if spec.rep_dim().pow(n as u32) <= EIG_DIM_LIMIT {
                let swapped = layer_swap_distance(spec, &d, &xe, n)?;
                r.measure(format!("circuit.layer_swap_distance.n{n}"), swapped);
            }
        }
        Suite::HopfSpecial => {
            let t = ctx.tol_or(IDENTITY_TOL);
            for (k, v) in hopf_specialization_report(spec, &d)? {
                r.at_most(format!("hopf.{k}"), v, t);
            }
        }
        Suite::Identities => {
            let t = ctx.tol_or(IDENTITY_TOL);
            for (k, v) in core_invariants(spec, &d)? {
                r.at_most(format!("core.{k}"), v, t);
            }
            for (k, v) in identity_suite(spec, &d)? {
                r.at_most(format!("identity.{k}"), v, t);
            }
        }
    }
    r.time("suite", start);
    Ok(r)
}

/// Threshold above which the no-gluing distance counts as an obstruction.
pub const NO_GLUING_THRESHOLD: f64 = 1e-3;

/// Compare `tr_{2,3}(ρ₂(Ω)⊗ρ₂(Ω))` with `tr_{3,4}(ρ₄(Ω))`.
///
/// For Hopf algebras the two agree (checked to `1e-10`); for proper weak
/// Hopf algebras the distance must exceed [`NO_GLUING_THRESHOLD`].
pub fn cmd_witness_nogluing(ctx: &Context) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let spec = &ctx.spec;
    let mut r = ctx.report();
    let d = distinguished(spec)?;
    let w = no_gluing_witness(spec, &d)?;
    r.measure("product_deviation", w.product_deviation);
    if ctx.is_hopf() {
        r.at_most("nogluing.distance", w.distance, ctx.tol_or(1e-10));
    } else {
        r.above(
            "nogluing.distance",
            w.distance,
            ctx.tol_or(NO_GLUING_THRESHOLD),
        );
    }
    r.time("witness", start);
    Ok(r)
}
