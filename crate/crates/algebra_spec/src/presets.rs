//! Builders for the standard example algebras.

use numeric_core::{c64, CMatrix, C64};

use crate::error::SpecError;
use crate::group::GroupTable;
use crate::spec::{SpecParts, WhaSpec};

fn zero() -> C64 {
    c64(0.0, 0.0)
}

fn one() -> C64 {
    c64(1.0, 0.0)
}

/// Group algebra `ℂG` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g* = g⁻¹`.
///
/// `rep[g]` is the representation matrix of the group element `g`; it must be
/// unitary for the result to be a *-representation.
pub fn build_group_algebra(group: &GroupTable, rep: Vec<CMatrix>) -> Result<WhaSpec, SpecError> {
    let n = group.order();
    if rep.len() != n {
        return Err(SpecError::Dimension(format!(
            "{} representation matrices for a group of order {n}",
            rep.len()
        )));
    }
    let rep_dim = rep[0].rows();
    let mut mult = vec![zero(); n * n * n];
    let mut coproduct = vec![zero(); n * n * n];
    let mut inv = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            mult[(a * n + b) * n + group.mul(a, b)] = one();
        }
        coproduct[(a * n + a) * n + a] = one();
        inv[(group.inverse(a), a)] = one();
    }
    let mut unit = vec![zero(); n];
    unit[group.identity()] = one();
    WhaSpec::new(SpecParts {
        labels: group.names().to_vec(),
        mult,
        unit,
        star: inv.clone(),
        coproduct,
        counit: vec![one(); n],
        antipode: inv,
        rep_dim,
        rep,
    })
}

/// Group algebra with its left regular representation `L_g e_h = e_{gh}`.
pub fn build_group_algebra_regular(group: &GroupTable) -> Result<WhaSpec, SpecError> {
    let n = group.order();
    let rep = (0..n)
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for h in 0..n {
                m[(group.mul(g, h), h)] = one();
            }
            m
        })
        .collect();
    build_group_algebra(group, rep)
}

/// `ℂZ₂` with `φ(g) = σ_z`.
pub fn z2_sigma_z() -> WhaSpec {
    build_group_algebra(
        &GroupTable::cyclic(2),
        vec![CMatrix::identity(2), CMatrix::diag_real(&[1.0, -1.0])],
    )
    .expect("Z2 preset is valid")
}

/// Function algebra `ℂ^G` on the delta basis.
///
/// `δ_gδ_h = [g=h]δ_g`, `Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k`, `ε(δ_g) = [g=e]`,
/// `S(δ_g) = δ_{g⁻¹}`, `δ_g* = δ_g`, and `φ(δ_g)` is the diagonal matrix unit.
pub fn build_function_algebra(group: &GroupTable) -> Result<WhaSpec, SpecError> {
    let n = group.order();
    let mut mult = vec![zero(); n * n * n];
    let mut coproduct = vec![zero(); n * n * n];
    let mut antipode = CMatrix::zeros(n, n);
    let mut counit = vec![zero(); n];
    counit[group.identity()] = one();
    for g in 0..n {
        mult[(g * n + g) * n + g] = one();
        antipode[(group.inverse(g), g)] = one();
        for h in 0..n {
            for k in 0..n {
                if group.mul(h, k) == g {
                    coproduct[(g * n + h) * n + k] = one();
                }
            }
        }
    }
    let rep = (0..n)
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            m[(g, g)] = one();
            m
        })
        .collect();
    WhaSpec::new(SpecParts {
        labels: group.names().iter().map(|s| format!("δ_{s}")).collect(),
        mult,
        unit: vec![one(); n],
        star: CMatrix::identity(n),
        coproduct,
        counit,
        antipode,
        rep_dim: n,
        rep,
    })
}

/// Index of `x^a y^b z^c` in the Kac–Paljutkin basis.
fn kp_index(a: usize, b: usize, c: usize) -> usize {
    a * 4 + b * 2 + c
}

/// Product of two normal-form words, as `(index, coefficient)` terms.
fn kp_word_mul(p: (usize, usize, usize), q: (usize, usize, usize)) -> Vec<(usize, f64)> {
    let (a, b, c) = p;
    let (mut a2, mut b2, c2) = q;
    if c == 1 {
        // z x^{a2} y^{b2} = y^{a2} x^{b2} z
        std::mem::swap(&mut a2, &mut b2);
    }
    let (x, y) = ((a + a2) % 2, (b + b2) % 2);
    if c + c2 < 2 {
        return vec![(kp_index(x, y, c + c2), 1.0)];
    }
    // z² = ½(1 + x + y − xy)
    [(0, 0, 0.5), (1, 0, 0.5), (0, 1, 0.5), (1, 1, -0.5)]
        .iter()
        .map(|&(da, db, s)| (kp_index((x + da) % 2, (y + db) % 2, 0), s))
        .collect()
}

/// Product in `A⊗A` of two coefficient matrices.
fn tensor_mul(mult: &[C64], n: usize, p: &CMatrix, q: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let pij = p[(i, j)];
            if pij == zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let s = pij * q[(k, l)];
                    if s == zero() {
                        continue;
                    }
                    for a in 0..n {
                        let m1 = mult[(i * n + k) * n + a];
                        if m1 == zero() {
                            continue;
                        }
                        for b in 0..n {
                            out[(a, b)] += s * m1 * mult[(j * n + l) * n + b];
                        }
                    }
                }
            }
        }
    }
    out
}

fn outer(u: &[C64], v: &[C64]) -> CMatrix {
    CMatrix::from_fn(u.len(), v.len(), |r, c| u[r] * v[c])
}

/// The eight-dimensional Kac–Paljutkin Hopf algebra `H₈`.
///
/// The basis is `x^a y^b z^c` with index `4a + 2b + c`. Relations are
/// `x² = y² = 1`, `xy = yx`, `zx = yz`, `zy = xz` and
/// `z² = ½(1 + x + y − xy)`. The coproduct is `Δ(x) = x⊗x`, `Δ(y) = y⊗y`,
/// `Δ(z) = ½(z⊗z + yz⊗z + z⊗xz − yz⊗xz)` extended multiplicatively. The
/// counit is 1 on every word, `S(x^a y^b z^c) = z^c y^b x^a` and the star is
/// fixed by `x* = x`, `y* = y`, `z* = z⁻¹`. The representation is the left
/// regular one.
pub fn build_kac_paljutkin() -> WhaSpec {
    let n = 8;
    let words: Vec<(usize, usize, usize)> = (0..n).map(|i| (i / 4, (i / 2) % 2, i % 2)).collect();
    let mut mult = vec![zero(); n * n * n];
    for (i, &p) in words.iter().enumerate() {
        for (j, &q) in words.iter().enumerate() {
            for (k, s) in kp_word_mul(p, q) {
                mult[(i * n + j) * n + k] += c64(s, 0.0);
            }
        }
    }
    let basis = |i: usize| -> Vec<C64> {
        let mut v = vec![zero(); n];
        v[i] = one();
        v
    };
    let mul = |a: &[C64], b: &[C64]| -> Vec<C64> {
        let mut out = vec![zero(); n];
        for i in 0..n {
            for j in 0..n {
                let s = a[i] * b[j];
                if s != zero() {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += s * mult[(i * n + j) * n + k];
                    }
                }
            }
        }
        out
    };
    let (e, x, y, z) = (
        basis(0),
        basis(kp_index(1, 0, 0)),
        basis(kp_index(0, 1, 0)),
        basis(kp_index(0, 0, 1)),
    );
    let yz = mul(&y, &z);
    let xz = mul(&x, &z);
    let z_inv = mul(&mul(&z, &z), &z);
    let dx = outer(&x, &x);
    let dy = outer(&y, &y);
    let mut dz = outer(&z, &z);
    dz += &outer(&yz, &z);
    dz += &outer(&z, &xz);
    dz -= &outer(&yz, &xz);
    let dz = dz.scale_real(0.5);

    let mut coproduct = vec![zero(); n * n * n];
    let mut antipode = CMatrix::zeros(n, n);
    let mut star = CMatrix::zeros(n, n);
    for (w, &(a, b, c)) in words.iter().enumerate() {
        let mut t = outer(&e, &e);
        let mut s = e.clone();
        let mut st = e.clone();
        for _ in 0..a {
            t = tensor_mul(&mult, n, &t, &dx);
        }
        for _ in 0..b {
            t = tensor_mul(&mult, n, &t, &dy);
        }
        for _ in 0..c {
            t = tensor_mul(&mult, n, &t, &dz);
            s = mul(&s, &z);
            st = mul(&st, &z_inv);
        }
        for _ in 0..b {
            s = mul(&s, &y);
            st = mul(&st, &y);
        }
        for _ in 0..a {
            s = mul(&s, &x);
            st = mul(&st, &x);
        }
        coproduct[w * n * n..(w + 1) * n * n].copy_from_slice(t.data());
        for k in 0..n {
            antipode[(k, w)] = s[k];
            star[(k, w)] = st[k];
        }
    }
    let rep = (0..n)
        .map(|i| CMatrix::from_fn(n, n, |k, j| mult[(i * n + j) * n + k]))
        .collect();
    let labels = words
        .iter()
        .map(|&(a, b, c)| {
            let mut s = String::new();
            if a == 1 {
                s.push('x');
            }
            if b == 1 {
                s.push('y');
            }
            if c == 1 {
                s.push('z');
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    WhaSpec::new(SpecParts {
        labels,
        mult,
        unit: e,
        star,
        coproduct,
        counit: vec![one(); n],
        antipode,
        rep_dim: n,
        rep,
    })
    .expect("Kac–Paljutkin preset is valid")
}

/// Positive root `ζ` of `z⁴ + z² − 1`, by Newton iteration.
pub fn lee_yang_zeta() -> f64 {
    let mut z: f64 = 0.8;
    for _ in 0..60 {
        let f = z.powi(4) + z * z - 1.0;
        let df = 4.0 * z.powi(3) + 2.0 * z;
        let step = f / df;
        z -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    z
}

/// Index of the matrix unit `e_block^{ij}` (1-based `i`, `j`) in the Lee–Yang basis.
fn ly_index(block: usize, i: usize, j: usize) -> usize {
    match block {
        1 => (i - 1) * 2 + (j - 1),
        2 => 4 + (i - 1) * 3 + (j - 1),
        _ => unreachable!("Lee–Yang has two blocks"),
    }
}

type Unit = (usize, usize, usize);

/// The thirteen-dimensional Lee–Yang weak Hopf algebra `M₂(ℂ) ⊕ M₃(ℂ)`.
///
/// The basis is the matrix units `e₁^{ij}` (indices 0–3) followed by
/// `e₂^{kl}` (indices 4–12), both in row-major order. The representation is the
/// block embedding into `End(ℂ⁵)`, with the `M₂` block first.
pub fn build_lee_yang() -> WhaSpec {
    let n = 13;
    let z = lee_yang_zeta();
    let mut labels = Vec::with_capacity(n);
    for i in 1..=2 {
        for j in 1..=2 {
            labels.push(format!("e1^{i}{j}"));
        }
    }
    for k in 1..=3 {
        for l in 1..=3 {
            labels.push(format!("e2^{k}{l}"));
        }
    }
    let units: Vec<Unit> = (0..n)
        .map(|p| {
            if p < 4 {
                (1, p / 2 + 1, p % 2 + 1)
            } else {
                (2, (p - 4) / 3 + 1, (p - 4) % 3 + 1)
            }
        })
        .collect();
    let idx = |u: Unit| ly_index(u.0, u.1, u.2);

    let mut mult = vec![zero(); n * n * n];
    for (p, &(b, i, j)) in units.iter().enumerate() {
        for (q, &(b2, k, l)) in units.iter().enumerate() {
            if b == b2 && j == k {
                mult[(p * n + q) * n + idx((b, i, l))] = one();
            }
        }
    }
    let mut unit = vec![zero(); n];
    for u in [(1, 1, 1), (1, 2, 2), (2, 1, 1), (2, 2, 2), (2, 3, 3)] {
        unit[idx(u)] = one();
    }
    let mut star = CMatrix::zeros(n, n);
    for (p, &(b, i, j)) in units.iter().enumerate() {
        star[(idx((b, j, i)), p)] = one();
    }

    let mut coproduct = vec![zero(); n * n * n];
    let mut add = |src: Unit, terms: &[(f64, Unit, Unit)]| {
        let k = idx(src);
        for &(c, a, b) in terms {
            coproduct[(k * n + idx(a)) * n + idx(b)] += c64(c, 0.0);
        }
    };
    let (z2, z3, z4) = (z * z, z * z * z, z * z * z * z);
    add(
        (1, 1, 1),
        &[(1.0, (1, 1, 1), (1, 1, 1)), (1.0, (2, 1, 1), (2, 2, 2))],
    );
    add(
        (1, 1, 2),
        &[
            (1.0, (1, 1, 2), (1, 1, 2)),
            (z2, (2, 1, 2), (2, 2, 1)),
            (z, (2, 1, 3), (2, 2, 3)),
        ],
    );
    add(
        (1, 2, 2),
        &[
            (1.0, (1, 2, 2), (1, 2, 2)),
            (z4, (2, 2, 2), (2, 1, 1)),
            (z3, (2, 2, 3), (2, 1, 3)),
            (z3, (2, 3, 2), (2, 3, 1)),
            (z2, (2, 3, 3), (2, 3, 3)),
        ],
    );
    add(
        (2, 1, 1),
        &[
            (1.0, (1, 1, 1), (2, 1, 1)),
            (1.0, (2, 1, 1), (1, 2, 2)),
            (1.0, (2, 1, 1), (2, 3, 3)),
        ],
    );
    add(
        (2, 1, 2),
        &[
            (1.0, (1, 1, 2), (2, 1, 2)),
            (1.0, (2, 1, 2), (1, 2, 1)),
            (1.0, (2, 1, 3), (2, 3, 2)),
        ],
    );
    add(
        (2, 1, 3),
        &[
            (1.0, (1, 1, 2), (2, 1, 3)),
            (1.0, (2, 1, 3), (1, 2, 2)),
            (z, (2, 1, 2), (2, 3, 1)),
            (-z2, (2, 1, 3), (2, 3, 3)),
        ],
    );
    add(
        (2, 2, 2),
        &[
            (1.0, (1, 2, 2), (2, 2, 2)),
            (1.0, (2, 2, 2), (1, 1, 1)),
            (1.0, (2, 3, 3), (2, 2, 2)),
        ],
    );
    add(
        (2, 2, 3),
        &[
            (1.0, (1, 2, 2), (2, 2, 3)),
            (1.0, (2, 2, 3), (1, 1, 2)),
            (z, (2, 3, 2), (2, 2, 1)),
            (-z2, (2, 3, 3), (2, 2, 3)),
        ],
    );
    add(
        (2, 3, 3),
        &[
            (1.0, (1, 2, 2), (2, 3, 3)),
            (1.0, (2, 3, 3), (1, 2, 2)),
            (z2, (2, 2, 2), (2, 1, 1)),
            (-z3, (2, 2, 3), (2, 1, 3)),
            (-z3, (2, 3, 2), (2, 3, 1)),
            (z4, (2, 3, 3), (2, 3, 3)),
        ],
    );
    // The remaining units are stars of tabulated ones: Δ(x*) = (*⊗*)Δ(x).
    for (b, i, j) in [(1, 2, 1), (2, 2, 1), (2, 3, 1), (2, 3, 2)] {
        let (dst, src) = (idx((b, i, j)), idx((b, j, i)));
        for a in 0..n {
            for c in 0..n {
                let v = coproduct[(src * n + a) * n + c];
                if v != zero() {
                    let (a2, c2) = (idx(star_of(units[a])), idx(star_of(units[c])));
                    coproduct[(dst * n + a2) * n + c2] += v.conj();
                }
            }
        }
    }

    let mut counit = vec![zero(); n];
    for p in 0..4 {
        counit[p] = one();
    }
    let mut antipode = CMatrix::zeros(n, n);
    for i in 1..=2 {
        for j in 1..=2 {
            antipode[(idx((1, j, i)), idx((1, i, j)))] = one();
        }
    }
    let w = |k: usize| [0, 2, 1][k - 1];
    let sigma = |k: usize| [2, 1, 3][k - 1];
    for k in 1..=3 {
        for l in 1..=3 {
            let e = w(k) - w(l);
            antipode[(idx((2, sigma(l), sigma(k))), idx((2, k, l)))] = c64(z.powi(e), 0.0);
        }
    }
    let rep = units
        .iter()
        .map(|&(b, i, j)| {
            let off = if b == 1 { 0 } else { 2 };
            let mut m = CMatrix::zeros(5, 5);
            m[(off + i - 1, off + j - 1)] = one();
            m
        })
        .collect();
    WhaSpec::new(SpecParts {
        labels,
        mult,
        unit,
        star,
        coproduct,
        counit,
        antipode,
        rep_dim: 5,
        rep,
    })
    .expect("Lee–Yang preset is valid")
}

fn star_of(u: Unit) -> Unit {
    (u.0, u.2, u.1)
}

/// Nonzero entries of the five-dimensional Lee–Yang MPO tensor.
///
/// Each entry is `([left, right, up, down], value)` with 0-based indices. The
/// virtual bond runs from left to right. Closing `N` copies of this tensor
/// with arbitrary boundary matrices spans the same operator space as
/// `φ^{⊗N}(Δ^{N−1}(A))` for the block-embedding representation.
pub fn lee_yang_mpo_tensor() -> Vec<([usize; 4], C64)> {
    let z = lee_yang_zeta();
    let ones = [
        [1, 1, 1, 1],
        [1, 2, 3, 3],
        [2, 1, 4, 4],
        [2, 2, 2, 2],
        [2, 2, 5, 5],
        [3, 3, 2, 1],
        [3, 4, 4, 3],
        [3, 5, 5, 3],
        [4, 4, 1, 2],
        [5, 4, 4, 5],
        [5, 5, 2, 2],
    ];
    let mut out: Vec<([usize; 4], C64)> = ones.iter().map(|&t| (t, one())).collect();
    out.push(([4, 5, 3, 5], c64(z, 0.0)));
    out.push(([5, 3, 5, 4], c64(z, 0.0)));
    out.push(([4, 3, 3, 4], c64(z * z, 0.0)));
    out.push(([5, 5, 5, 5], c64(-z * z, 0.0)));
    out.into_iter()
        .map(|(t, v)| ([t[0] - 1, t[1] - 1, t[2] - 1, t[3] - 1], v))
        .collect()
}

/// Direct sum `A ⊕ B` of two algebras.
///
/// Every structure map acts blockwise; the coproduct of `A ⊕ B` lands in
/// `A⊗A ⊕ B⊗B`. The result is never connected, which makes it a useful
/// negative example for connectedness tests.
pub fn direct_sum(a: &WhaSpec, b: &WhaSpec) -> Result<WhaSpec, SpecError> {
    let (na, nb) = (a.n(), b.n());
    let n = na + nb;
    let (da, db) = (a.rep_dim(), b.rep_dim());
    let mut mult = vec![zero(); n * n * n];
    let mut coproduct = vec![zero(); n * n * n];
    for (spec, off, m) in [(a, 0, na), (b, na, nb)] {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    mult[((off + i) * n + off + j) * n + off + k] = spec.mult_coeff(i, j, k);
                    coproduct[((off + i) * n + off + j) * n + off + k] =
                        spec.coproduct_coeff(i, j, k);
                }
            }
        }
    }
    let block_diag = |x: &CMatrix, y: &CMatrix| {
        let mut m = CMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
        m.set_block(0, 0, x);
        m.set_block(x.rows(), x.cols(), y);
        m
    };
    let cat = |x: Vec<C64>, y: Vec<C64>| x.into_iter().chain(y).collect::<Vec<_>>();
    let rep = a
        .rep()
        .iter()
        .map(|m| block_diag(m, &CMatrix::zeros(db, db)))
        .chain(
            b.rep()
                .iter()
                .map(|m| block_diag(&CMatrix::zeros(da, da), m)),
        )
        .collect();
    let labels = a
        .labels()
        .iter()
        .map(|s| format!("A:{s}"))
        .chain(b.labels().iter().map(|s| format!("B:{s}")))
        .collect();
    WhaSpec::new(SpecParts {
        labels,
        mult,
        unit: cat(a.unit().into_coeffs(), b.unit().into_coeffs()),
        star: block_diag(a.star_matrix(), b.star_matrix()),
        coproduct,
        counit: cat(a.counit().into_coeffs(), b.counit().into_coeffs()),
        antipode: block_diag(a.antipode_matrix(), b.antipode_matrix()),
        rep_dim: da + db,
        rep,
    })
}
