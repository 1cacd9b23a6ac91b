//! Sectors, characters, fusion rules and Frobenius–Perron dimensions.

use std::cmp::Ordering;

use algebra_spec::{AlgebraElement, Functional, WhaSpec};
use numeric_core::{c64, hermitian_eig, hermitian_eigenvalues, lstsq, null_space, tol, CMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::dualize;
use crate::error::EngineError;
use crate::haar::haar_integral;
use crate::structure::{convolve, Structure};
use crate::subalg::{center, counital_subalgebras, intersection_dim};

/// Seed of the random central element used for clustering.
pub const SECTOR_SEED: u64 = 7;

/// Largest allowed distance of a fusion coefficient from an integer.
pub const FUSION_INTEGRALITY_TOL: f64 = 1e-4;

/// Coefficients below this are outside the support of an idempotent.
const SUPPORT_TOL: f64 = 1e-9;

/// Sector decomposition of one algebra without connectedness flags.
#[derive(Clone, Debug)]
pub struct SectorBasics {
    /// Minimal central idempotents `e_α`.
    pub central_idempotents: Vec<AlgebraElement>,
    /// Irreducible characters `χ_α`.
    pub characters: Vec<Functional>,
    /// Irrep dimensions `χ_α(1)`.
    pub irrep_dims: Vec<usize>,
    /// Multiplicities `ν_α = tr φ(e_α) / χ_α(1)` in the attached representation.
    pub multiplicities: Vec<f64>,
    /// Fusion coefficients `N[α][β][γ]`.
    pub fusion: Vec<Vec<Vec<u64>>>,
    /// Largest distance of a fusion coefficient from its rounded value.
    pub fusion_integrality_gap: f64,
    /// Frobenius–Perron dimensions `d_α`.
    pub fp_dims: Vec<f64>,
    /// `𝒟² = Σ d_α²`.
    pub d2: f64,
}

impl SectorBasics {
    /// Number of sectors.
    pub fn r(&self) -> usize {
        self.central_idempotents.len()
    }
}

/// Sector data together with the connectedness flags.
#[derive(Clone, Debug)]
pub struct SectorData {
    /// Sector decomposition of the algebra.
    pub basics: SectorBasics,
    /// `dim(A^L ∩ Z(A)) = 1`.
    pub connected: bool,
    /// The same test on the dual algebra.
    pub coconnected: bool,
    /// Both of the above.
    pub biconnected: bool,
}

impl std::ops::Deref for SectorData {
    type Target = SectorBasics;
    fn deref(&self) -> &SectorBasics {
        &self.basics
    }
}

fn support(e: &AlgebraElement) -> Vec<usize> {
    (0..e.len())
        .filter(|&i| e[i].norm() > SUPPORT_TOL)
        .collect()
}

fn compare_sectors(a: &(usize, AlgebraElement), b: &(usize, AlgebraElement)) -> Ordering {
    a.0.cmp(&b.0)
        .then_with(|| support(&a.1).cmp(&support(&b.1)))
        .then_with(|| {
            // Descending real coefficients.
            for (x, y) in a.1.coeffs().iter().zip(b.1.coeffs()) {
                if (x.re - y.re).abs() > SUPPORT_TOL {
                    return y.re.partial_cmp(&x.re).unwrap_or(Ordering::Equal);
                }
            }
            Ordering::Equal
        })
}

/// Minimal central idempotents, ordered by irrep dimension, then support,
/// then descending coefficients.
pub fn central_idempotents(spec: &WhaSpec) -> Result<Vec<AlgebraElement>, EngineError> {
    let z = center(spec);
    let mut herm = Vec::with_capacity(2 * z.len());
    for v in &z {
        let vs = spec.star(v);
        herm.push((v + &vs).scale_real(0.5));
        herm.push((v - &vs).scale(c64(0.0, 0.5)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SECTOR_SEED);
    let mut zr = AlgebraElement::zeros(spec.n());
    for hv in &herm {
        zr.axpy(c64(rng.gen_range(-1.0..1.0), 0.0), hv);
    }
    let eig = hermitian_eig(&spec.phi(&zr).hermitian_part())?;
    let vals = eig.real_eigenvalues();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if (v - vals[*c.last().expect("nonempty")]).abs() < tol::EIG_CLUSTER => {
                c.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.len() != z.len() {
        return Err(EngineError::Clustering(format!(
            "{} eigenvalue clusters for a center of dimension {}",
            clusters.len(),
            z.len()
        )));
    }
    let d = eig.eigenvectors.rows();
    let mut out = Vec::with_capacity(clusters.len());
    for c in &clusters {
        let p = CMatrix::from_fn(d, d, |r, s| {
            c.iter()
                .map(|&k| eig.eigenvectors[(r, k)] * eig.eigenvectors[(s, k)].conj())
                .sum()
        });
        let e = crate::elements::pull(spec, &p)
            .map_err(|e| EngineError::Clustering(format!("projector not in image: {e}")))?;
        out.push(e);
    }
    let mut keyed = out
        .iter()
        .map(|e| block_dim(spec, e))
        .collect::<Result<Vec<_>, _>>()?;
    keyed.sort_by(compare_sectors);
    Ok(keyed.into_iter().map(|(_, e)| e).collect())
}

fn block_dim(spec: &WhaSpec, e: &AlgebraElement) -> Result<(usize, AlgebraElement), EngineError> {
    let l = spec.left_mult_matrix(e);
    let rank = spec.n() - null_space(&l, tol::RANK).len();
    let nd = (rank as f64).sqrt().round() as usize;
    if nd * nd != rank || nd == 0 {
        return Err(EngineError::Clustering(format!(
            "block of rank {rank} is not a full matrix algebra"
        )));
    }
    Ok((nd, e.clone()))
}

/// Sector decomposition, characters, fusion rules and FP dimensions.
pub fn sector_basics(spec: &WhaSpec) -> Result<SectorBasics, EngineError> {
    let n = spec.n();
    let ids = central_idempotents(spec)?;
    let mut irrep_dims = Vec::new();
    let mut characters = Vec::new();
    let mut multiplicities = Vec::new();
    for e in &ids {
        let (nd, _) = block_dim(spec, e)?;
        let chi: Vec<_> = (0..n)
            .map(|i| spec.left_mult_matrix(&spec.mul(&spec.basis(i), e)).trace() / nd as f64)
            .collect();
        irrep_dims.push(nd);
        characters.push(Functional::new(chi));
        multiplicities.push(spec.phi(e).trace().re / nd as f64);
    }
    let (fusion, gap) = fusion_rules(spec, &characters)?;
    let fp_dims = fp_dimensions(&fusion)?;
    let d2 = fp_dims.iter().map(|d| d * d).sum();
    Ok(SectorBasics {
        central_idempotents: ids,
        characters,
        irrep_dims,
        multiplicities,
        fusion,
        fusion_integrality_gap: gap,
        fp_dims,
        d2,
    })
}

/// Expand every product `χ_αχ_β` in the character basis.
pub fn fusion_rules(
    spec: &WhaSpec,
    characters: &[Functional],
) -> Result<(Vec<Vec<Vec<u64>>>, f64), EngineError> {
    let st = Structure::new(spec);
    let r = characters.len();
    let basis = CMatrix::from_columns(
        &characters
            .iter()
            .map(|c| c.coeffs().to_vec())
            .collect::<Vec<_>>(),
    );
    let mut out = vec![vec![vec![0u64; r]; r]; r];
    let mut gap: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            let p = convolve(&st, &characters[a], &characters[b]);
            let rhs = CMatrix::from_vec(spec.n(), 1, p.coeffs().to_vec())?;
            let sol = lstsq(&basis, &rhs)?;
            if sol.residual > 1e-8 {
                return Err(EngineError::Fusion(format!(
                    "χ_{a}χ_{b} is outside the character span (residual {:.3e})",
                    sol.residual
                )));
            }
            for c in 0..r {
                let v = sol.solution[(c, 0)];
                let rounded = v.re.round();
                let dist = (v - c64(rounded, 0.0)).norm();
                gap = gap.max(dist);
                if dist > FUSION_INTEGRALITY_TOL || rounded < 0.0 {
                    return Err(EngineError::Fusion(format!(
                        "N[{a}][{b}][{c}] = {v} is not a non-negative integer"
                    )));
                }
                out[a][b][c] = rounded as u64;
            }
        }
    }
    Ok((out, gap))
}

/// Frobenius–Perron dimensions `d_α = ρ(N_α)`.
///
/// Fusion matrices of a rigid category are normal (`N_ᾱ = N_αᵀ`), so the
/// spectral radius equals the largest singular value. Normality is checked.
pub fn fp_dimensions(fusion: &[Vec<Vec<u64>>]) -> Result<Vec<f64>, EngineError> {
    let r = fusion.len();
    let mut dims = Vec::with_capacity(r);
    for (a, n) in fusion.iter().enumerate() {
        let m = CMatrix::from_fn(r, r, |b, c| c64(n[b][c] as f64, 0.0));
        let mt = m.transpose();
        let normal = (&m * &mt).max_abs_diff(&(&mt * &m));
        if normal > 1e-9 {
            return Err(EngineError::Fusion(format!(
                "fusion matrix N_{a} is not normal (residual {normal:.3e})"
            )));
        }
        let top = hermitian_eigenvalues(&(&m * &mt))?
            .into_iter()
            .fold(0.0f64, f64::max);
        dims.push(top.sqrt());
    }
    Ok(dims)
}

/// `dim(A^L ∩ Z(A)) = 1`, cross-checked against the Haar integral having
/// total rank one across the irreducible representations.
pub fn is_connected(spec: &WhaSpec, basics: &SectorBasics) -> Result<bool, EngineError> {
    let (al, _) = counital_subalgebras(spec);
    let by_center = intersection_dim(&al, &center(spec)) == 1;
    let h = haar_integral(spec)?;
    let total: f64 = basics.characters.iter().map(|c| c.apply(&h).re).sum();
    let by_haar = (total - 1.0).abs() < 1e-6;
    if by_center != by_haar {
        return Err(EngineError::ConnectednessMismatch(format!(
            "A^L ∩ Z test says {by_center}, Haar rank {total:.6} says {by_haar}"
        )));
    }
    Ok(by_center)
}

/// Sector data with connectedness flags for the algebra and its dual.
pub fn sectors(spec: &WhaSpec) -> Result<SectorData, EngineError> {
    let basics = sector_basics(spec)?;
    let connected = is_connected(spec, &basics)?;
    let dual = dualize(spec)?;
    let dual_basics = sector_basics(&dual)?;
    let coconnected = is_connected(&dual, &dual_basics)?;
    Ok(SectorData {
        basics,
        connected,
        coconnected,
        biconnected: connected && coconnected,
    })
}
