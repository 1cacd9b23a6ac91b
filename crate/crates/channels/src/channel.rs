//! Channels in measure-and-prepare form `X ↦ Σ_k tr(F_k X) G_k`.

use numeric_core::{c64, hermitian_eig, min_eigenvalue, CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wha_engine::check_budget;

use crate::error::ChannelError;

/// Largest `d_in·d_out` for which complete positivity is checked by a Choi eigen-solve.
pub const CHOI_EIG_LIMIT: usize = 1024;

/// Tolerance on the CPTP residuals.
pub const CPTP_TOL: f64 = 1e-9;

/// Seed of the random test matrices used by the linearity check.
pub const LINEARITY_SEED: u64 = 7;

/// One summand `X ↦ tr(F X) G`.
#[derive(Clone, Debug)]
pub struct Term {
    /// Operator on the input space.
    pub f: CMatrix,
    /// Operator on the output space.
    pub g: CMatrix,
}

/// A linear map `End(ℂ^{d_in}) → End(ℂ^{d_out})`.
#[derive(Clone, Debug)]
pub struct Channel {
    /// Input dimension.
    pub d_in: usize,
    /// Output dimension.
    pub d_out: usize,
    /// Human-readable name.
    pub label: String,
    /// Summands of the map.
    pub terms: Vec<Term>,
    /// For a composite, its factors in order of application.
    pub components: Vec<Channel>,
}

/// CPTP residuals of a channel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CptpReport {
    /// Smallest Choi eigenvalue; for certified composites the smallest over the factors.
    pub min_choi_eigenvalue: f64,
    /// `‖tr_out(Choi) − I‖_max`.
    pub tp_residual: f64,
    /// Whether complete positivity was certified on the factors of a composite.
    pub certified_by_components: bool,
}

impl CptpReport {
    /// Both residuals within [`CPTP_TOL`].
    pub fn pass(&self) -> bool {
        self.min_choi_eigenvalue >= -CPTP_TOL && self.tp_residual <= CPTP_TOL
    }
}

fn matrix_unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut e = CMatrix::zeros(d, d);
    e[(i, j)] = c64(1.0, 0.0);
    e
}

impl Channel {
    /// A channel from explicit terms; terms with a zero factor are dropped.
    pub fn from_terms(
        label: impl Into<String>,
        d_in: usize,
        d_out: usize,
        terms: Vec<Term>,
    ) -> Result<Self, ChannelError> {
        for t in &terms {
            if (t.f.rows(), t.f.cols()) != (d_in, d_in)
                || (t.g.rows(), t.g.cols()) != (d_out, d_out)
            {
                return Err(ChannelError::Dimension(format!(
                    "term of shape {}x{} → {}x{} in a channel {d_in} → {d_out}",
                    t.f.rows(),
                    t.f.cols(),
                    t.g.rows(),
                    t.g.cols()
                )));
            }
        }
        Ok(Channel {
            d_in,
            d_out,
            label: label.into(),
            terms: terms
                .into_iter()
                .filter(|t| t.f.max_abs() > 0.0 && t.g.max_abs() > 0.0)
                .collect(),
            components: Vec::new(),
        })
    }

    /// `X ↦ tr(X)·state`.
    pub fn replacement(
        label: impl Into<String>,
        d_in: usize,
        state: &CMatrix,
    ) -> Result<Self, ChannelError> {
        Channel::from_terms(
            label,
            d_in,
            state.rows(),
            vec![Term {
                f: CMatrix::identity(d_in),
                g: state.clone(),
            }],
        )
    }

    /// Apply the map to an operator on the input space.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix, ChannelError> {
        if (x.rows(), x.cols()) != (self.d_in, self.d_in) {
            return Err(ChannelError::Dimension(format!(
                "{}x{} argument for input dimension {}",
                x.rows(),
                x.cols(),
                self.d_in
            )));
        }
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for t in &self.terms {
            out.axpy(t.f.trace_product(x), &t.g);
        }
        Ok(out)
    }

    /// `Σ_{ij} E_ij ⊗ Φ(E_ij) = Σ_k F_kᵀ ⊗ G_k`.
    pub fn choi(&self) -> Result<CMatrix, ChannelError> {
        let dim = self.d_in * self.d_out;
        check_budget((dim as u128).pow(2))?;
        let mut c = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            t.f.transpose().kron_accumulate(&t.g, c64(1.0, 0.0), &mut c);
        }
        Ok(c)
    }

    /// `‖Σ_k tr(G_k) F_k − I‖_max`.
    pub fn tp_residual(&self) -> f64 {
        let mut s = CMatrix::zeros(self.d_in, self.d_in);
        for t in &self.terms {
            s.axpy(t.g.trace(), &t.f);
        }
        s.max_abs_diff(&CMatrix::identity(self.d_in))
    }

    /// Check complete positivity and trace preservation.
    ///
    /// Up to [`CHOI_EIG_LIMIT`] the Choi matrix is diagonalized. Larger
    /// composites are certified on their factors, since compositions of CP
    /// maps are CP. Trace preservation is always checked on the map itself.
    pub fn cptp(&self) -> Result<CptpReport, ChannelError> {
        let tp_residual = self.tp_residual();
        if self.d_in * self.d_out > CHOI_EIG_LIMIT && !self.components.is_empty() {
            let mut min = f64::INFINITY;
            for c in &self.components {
                min = min.min(c.cptp()?.min_choi_eigenvalue);
            }
            return Ok(CptpReport {
                min_choi_eigenvalue: min,
                tp_residual,
                certified_by_components: true,
            });
        }
        let choi = self.choi()?;
        Ok(CptpReport {
            min_choi_eigenvalue: min_eigenvalue(&choi.hermitian_part())?,
            tp_residual,
            certified_by_components: false,
        })
    }

    /// `outer ∘ inner`, keeping both as components.
    pub fn compose(outer: &Channel, inner: &Channel) -> Result<Channel, ChannelError> {
        if inner.d_out != outer.d_in {
            return Err(ChannelError::Dimension(format!(
                "composing {} → {} after {} → {}",
                outer.d_in, outer.d_out, inner.d_in, inner.d_out
            )));
        }
        let terms = outer
            .terms
            .iter()
            .map(|o| {
                let mut f = CMatrix::zeros(inner.d_in, inner.d_in);
                for i in &inner.terms {
                    f.axpy(o.f.trace_product(&i.g), &i.f);
                }
                Term { f, g: o.g.clone() }
            })
            .collect();
        let mut c = Channel::from_terms(
            format!("{}∘{}", outer.label, inner.label),
            inner.d_in,
            outer.d_out,
            terms,
        )?;
        c.components = vec![inner.clone(), outer.clone()];
        Ok(c)
    }

    /// Apply the map to sites `first..first+k` of a state on `site_dims`,
    /// replacing them by sites of dimensions `out_dims`.
    pub fn apply_on_sites(
        &self,
        rho: &CMatrix,
        site_dims: &[usize],
        first: usize,
        k: usize,
        out_dims: &[usize],
    ) -> Result<CMatrix, ChannelError> {
        if first + k > site_dims.len() {
            return Err(ChannelError::Dimension(format!(
                "sites {first}..{} of a {}-site state",
                first + k,
                site_dims.len()
            )));
        }
        let p: usize = site_dims[..first].iter().product();
        let t: usize = site_dims[first..first + k].iter().product();
        let q: usize = site_dims[first + k..].iter().product();
        let t_out: usize = out_dims.iter().product();
        if t != self.d_in || t_out != self.d_out || rho.rows() != p * t * q || !rho.is_square() {
            return Err(ChannelError::Dimension(format!(
                "channel {} → {} on a block of dimension {t} → {t_out} inside a state of dimension {}",
                self.d_in,
                self.d_out,
                rho.rows()
            )));
        }
        let out_dim = p * t_out * q;
        check_budget((out_dim as u128).pow(2))?;
        let pq = p * q;
        let data = rho.data();
        let cols = rho.cols();
        let mut out = CMatrix::zeros(out_dim, out_dim);
        let mut m = vec![c64(0.0, 0.0); pq * pq];
        for term in &self.terms {
            // m[(p,q),(p2,q2)] = Σ_{t,u} F[u,t] ρ[(p,t,q),(p2,u,q2)]
            m.iter_mut().for_each(|z| *z = c64(0.0, 0.0));
            let fnz: Vec<(usize, usize, C64)> = (0..t)
                .flat_map(|u| (0..t).map(move |tt| (u, tt)))
                .filter_map(|(u, tt)| {
                    let v = term.f[(u, tt)];
                    (v != c64(0.0, 0.0)).then_some((tt, u, v))
                })
                .collect();
            for pi in 0..p {
                for qi in 0..q {
                    let mrow = (pi * q + qi) * pq;
                    for &(tt, u, v) in &fnz {
                        let row = (pi * t + tt) * q + qi;
                        for p2 in 0..p {
                            let base = row * cols + (p2 * t + u) * q;
                            let src = &data[base..base + q];
                            let dst = &mut m[mrow + p2 * q..mrow + p2 * q + q];
                            for (d, s) in dst.iter_mut().zip(src) {
                                *d += v * s;
                            }
                        }
                    }
                }
            }
            // out[(p,t',q),(p2,u',q2)] += m[(p,q),(p2,q2)] G[t',u']
            for pi in 0..p {
                for qi in 0..q {
                    let mrow = (pi * q + qi) * pq;
                    for to in 0..t_out {
                        let row = (pi * t_out + to) * q + qi;
                        for uo in 0..t_out {
                            let g = term.g[(to, uo)];
                            if g == c64(0.0, 0.0) {
                                continue;
                            }
                            for p2 in 0..p {
                                let base = row * out_dim + (p2 * t_out + uo) * q;
                                let src = &m[mrow + p2 * q..mrow + p2 * q + q];
                                let dst = &mut out.data_mut()[base..base + q];
                                for (d, s) in dst.iter_mut().zip(src) {
                                    *d += g * s;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Build a channel from a linear action on `d_in × d_in` matrices.
///
/// Linearity is checked on random pairs first. The terms are
/// `F = E_ji`, `G = apply(E_ij)`.
pub fn choi_from_action(
    label: impl Into<String>,
    apply: impl Fn(&CMatrix) -> CMatrix,
    d_in: usize,
    d_out: usize,
) -> Result<Channel, ChannelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(LINEARITY_SEED);
    let random = |rng: &mut ChaCha8Rng| {
        CMatrix::from_fn(d_in, d_in, |_, _| {
            c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    };
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let (x, y) = (random(&mut rng), random(&mut rng));
        let a = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut combo = y.clone();
        combo.axpy(a, &x);
        let lhs = apply(&combo);
        let mut rhs = apply(&y);
        rhs.axpy(a, &apply(&x));
        if (lhs.rows(), lhs.cols()) != (d_out, d_out) {
            return Err(ChannelError::Dimension(format!(
                "action returned {}x{}, expected {d_out}x{d_out}",
                lhs.rows(),
                lhs.cols()
            )));
        }
        worst = worst.max(lhs.max_abs_diff(&rhs) / (1.0 + rhs.max_abs()));
    }
    if worst > 1e-9 {
        return Err(ChannelError::Nonlinear(worst));
    }
    let mut terms = Vec::with_capacity(d_in * d_in);
    for i in 0..d_in {
        for j in 0..d_in {
            terms.push(Term {
                f: matrix_unit(d_in, j, i),
                g: apply(&matrix_unit(d_in, i, j)),
            });
        }
    }
    Channel::from_terms(label, d_in, d_out, terms)
}

/// Kraus operators `K` with `Φ(X) = Σ K X K†`, from the Choi spectrum.
///
/// Eigenvalues below `1e-12` times the largest are dropped.
pub fn kraus_from_choi(ch: &Channel) -> Result<Vec<CMatrix>, ChannelError> {
    let choi = ch.choi()?;
    let eig = hermitian_eig(&choi.hermitian_part())?;
    let vals = eig.real_eigenvalues();
    let top = vals.iter().cloned().fold(0.0f64, f64::max);
    let mut out = Vec::new();
    for (idx, &lam) in vals.iter().enumerate() {
        if lam <= 1e-12 * top.max(1e-300) {
            continue;
        }
        let s = lam.sqrt();
        out.push(CMatrix::from_fn(ch.d_out, ch.d_in, |a, i| {
            eig.eigenvectors[(i * ch.d_out + a, idx)] * s
        }));
    }
    Ok(out)
}

/// `Σ K X K†`.
pub fn apply_kraus(kraus: &[CMatrix], x: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(kraus[0].rows(), kraus[0].rows());
    for k in kraus {
        out = &out + &(&(k * x) * &k.adjoint());
    }
    out
}
