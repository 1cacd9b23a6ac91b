//! Residual-based validation of the weak Hopf algebra axioms.

use std::collections::BTreeMap;

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{c64, tol, CMatrix, C64};

use crate::elements::{antipode_inverse, apply_matrix, star2};
use crate::structure::{outer, Structure};

/// Residuals of every axiom and derived identity.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    /// Largest residual of each weak Hopf axiom.
    pub axioms: BTreeMap<String, f64>,
    /// Largest residual of the two extra Hopf conditions.
    pub hopf_axioms: BTreeMap<String, f64>,
    /// Consequences of the axioms, reported but not used for the flags.
    pub derived_checks: BTreeMap<String, f64>,
    /// Tolerance used for the flags.
    pub tolerance: f64,
    /// Every weak axiom holds within `tolerance`.
    pub is_weak_hopf: bool,
    /// Additionally `Δ(1) = 1⊗1` and `ε` is multiplicative.
    pub is_hopf: bool,
}

impl AxiomReport {
    /// Largest residual among the weak axioms.
    pub fn max_axiom_residual(&self) -> f64 {
        self.axioms.values().copied().fold(0.0, f64::max)
    }
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Evaluate all axioms on basis pairs and triples, flagging with [`tol::STRUCTURAL`].
pub fn validate_axioms(spec: &WhaSpec) -> AxiomReport {
    validate_axioms_with(spec, tol::STRUCTURAL)
}

/// Evaluate all axioms on basis pairs and triples with an explicit tolerance.
pub fn validate_axioms_with(spec: &WhaSpec, tolerance: f64) -> AxiomReport {
    let n = spec.n();
    let st = Structure::new(spec);
    let m = |i: usize, j: usize, k: usize| spec.mult_coeff(i, j, k);
    let d = |k: usize, i: usize, j: usize| spec.coproduct_coeff(k, i, j);
    let zero = c64(0.0, 0.0);
    let basis: Vec<AlgebraElement> = (0..n).map(|i| spec.basis(i)).collect();
    let cops: Vec<CMatrix> = basis.iter().map(|b| spec.coproduct(b)).collect();
    let s_mat = spec.antipode_matrix();
    let s_of = |x: &AlgebraElement| apply_matrix(s_mat, x);
    let eps = spec.counit();
    let unit = spec.unit();
    let d1 = spec.coproduct(&unit);
    let mut ax = BTreeMap::new();

    // (e_i e_j) e_l = e_i (e_j e_l)
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for q in 0..n {
                    let mut a = zero;
                    let mut b = zero;
                    for k in 0..n {
                        a += m(i, j, k) * m(k, l, q);
                        b += m(j, l, k) * m(i, k, q);
                    }
                    r = r.max((a - b).norm());
                }
            }
        }
    }
    ax.insert("associativity".to_string(), r);
    ax.insert("unit".to_string(), spec.unit_residual());

    // (Δ⊗id)Δ = (id⊗Δ)Δ
    let mut r: f64 = 0.0;
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut left = zero;
                    let mut right = zero;
                    for q in 0..n {
                        left += d(k, q, c) * d(q, a, b);
                        right += d(k, a, q) * d(q, b, c);
                    }
                    r = r.max((left - right).norm());
                }
            }
        }
    }
    ax.insert("coassociativity".to_string(), r);

    // (ε⊗id)Δ = id = (id⊗ε)Δ
    let mut r: f64 = 0.0;
    for k in 0..n {
        for j in 0..n {
            let delta = if j == k { 1.0 } else { 0.0 };
            let a: C64 = (0..n).map(|i| d(k, i, j) * eps[i]).sum();
            let b: C64 = (0..n).map(|i| d(k, j, i) * eps[i]).sum();
            r = r.max((a - delta).norm()).max((b - delta).norm());
        }
    }
    ax.insert("counit".to_string(), r);

    // Δ(xy) = Δ(x)Δ(y)
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = spec.coproduct(&spec.mul(&basis[i], &basis[j]));
            let rhs = st.mul2(&cops[i], &cops[j]);
            r = r.max(lhs.max_abs_diff(&rhs));
        }
    }
    ax.insert("comultiplicativity".to_string(), r);

    // Δ(x*) = (*⊗*)Δ(x)
    let r = (0..n)
        .map(|i| {
            spec.coproduct(&spec.star(&basis[i]))
                .max_abs_diff(&star2(spec, &cops[i]))
        })
        .fold(0.0, f64::max);
    ax.insert("star_comultiplicative".to_string(), r);

    // x** = x and (xy)* = y*x*
    let mut r_inv: f64 = 0.0;
    let mut r_anti: f64 = 0.0;
    for i in 0..n {
        r_inv = r_inv.max(spec.star(&spec.star(&basis[i])).max_abs_diff(&basis[i]));
        for j in 0..n {
            let l = spec.star(&spec.mul(&basis[i], &basis[j]));
            let rr = spec.mul(&spec.star(&basis[j]), &spec.star(&basis[i]));
            r_anti = r_anti.max(l.max_abs_diff(&rr));
        }
    }
    ax.insert("star_involution".to_string(), r_inv);
    ax.insert("star_antimultiplicative".to_string(), r_anti);

    // Δ²(1) = (Δ(1)⊗1)(1⊗Δ(1)) = (1⊗Δ(1))(Δ(1)⊗1)
    let d2 = st
        .delta_power(unit.coeffs(), 2)
        .expect("n³ coefficients fit any sane budget");
    let mut left = vec![zero; n * n * n];
    let mut right = vec![zero; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                left[(a * n + b) * n + c] = d1[(a, b)] * unit[c];
                right[(a * n + b) * n + c] = unit[a] * d1[(b, c)];
            }
        }
    }
    let r = max_diff(&d2, &st.mul3(&left, &right)).max(max_diff(&d2, &st.mul3(&right, &left)));
    ax.insert("weak_unit".to_string(), r);

    // ε(xyz) = ε(xy₁)ε(y₂z) = ε(xy₂)ε(y₁z)
    let e2 = CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| m(i, j, k) * eps[k]).sum());
    let mut r: f64 = 0.0;
    for j in 0..n {
        let entries = st.coproduct_entries(j);
        for i in 0..n {
            for l in 0..n {
                let xyz: C64 = (0..n).map(|k| m(i, j, k) * e2[(k, l)]).sum();
                let mut a = zero;
                let mut b = zero;
                for &(p, q, v) in entries {
                    a += v * e2[(i, p)] * e2[(q, l)];
                    b += v * e2[(i, q)] * e2[(p, l)];
                }
                r = r.max((xyz - a).norm()).max((xyz - b).norm());
            }
        }
    }
    ax.insert("weak_counit".to_string(), r);

    // x₁S(x₂) = ε(1₁x)1₂, S(x₁)x₂ = 1₁ε(x1₂), S(x₁)x₂S(x₃) = S(x)
    let s_basis: Vec<AlgebraElement> = basis.iter().map(&s_of).collect();
    let prod = |x: &AlgebraElement, y: &AlgebraElement| spec.mul(x, y);
    let mut r_t: f64 = 0.0;
    let mut r_s: f64 = 0.0;
    let mut r_sxs: f64 = 0.0;
    for i in 0..n {
        let dx = &cops[i];
        let mut l_t = AlgebraElement::zeros(n);
        let mut l_s = AlgebraElement::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let v = dx[(a, b)];
                if v == zero {
                    continue;
                }
                l_t.axpy(v, &prod(&basis[a], &s_basis[b]));
                l_s.axpy(v, &prod(&s_basis[a], &basis[b]));
            }
        }
        let mut r_t_elem = AlgebraElement::zeros(n);
        let mut r_s_elem = AlgebraElement::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let v = d1[(a, b)];
                if v == zero {
                    continue;
                }
                let ea = eps.apply(&prod(&basis[a], &basis[i]));
                let eb = eps.apply(&prod(&basis[i], &basis[b]));
                r_t_elem.axpy(v * ea, &basis[b]);
                r_s_elem.axpy(v * eb, &basis[a]);
            }
        }
        r_t = r_t.max(l_t.max_abs_diff(&r_t_elem));
        r_s = r_s.max(l_s.max_abs_diff(&r_s_elem));
        let d3 = st
            .delta_power(basis[i].coeffs(), 2)
            .expect("n³ coefficients fit any sane budget");
        let mut acc = AlgebraElement::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = d3[(a * n + b) * n + c];
                    if v != zero {
                        acc.axpy(v, &prod(&prod(&s_basis[a], &basis[b]), &s_basis[c]));
                    }
                }
            }
        }
        r_sxs = r_sxs.max(acc.max_abs_diff(&s_basis[i]));
    }
    ax.insert("antipode_target".to_string(), r_t);
    ax.insert("antipode_source".to_string(), r_s);
    ax.insert("antipode_sxs".to_string(), r_sxs);

    let is_weak_hopf = ax.values().all(|&v| v <= tolerance);

    let mut hopf = BTreeMap::new();
    hopf.insert(
        "unit_coproduct".to_string(),
        d1.max_abs_diff(&outer(&unit, &unit)),
    );
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            r = r.max((e2[(i, j)] - eps[i] * eps[j]).norm());
        }
    }
    hopf.insert("counit_multiplicative".to_string(), r);
    let is_hopf = is_weak_hopf && hopf.values().all(|&v| v <= tolerance);

    let mut derived = BTreeMap::new();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let l = s_of(&prod(&basis[i], &basis[j]));
            r = r.max(l.max_abs_diff(&prod(&s_basis[j], &s_basis[i])));
        }
    }
    derived.insert("antipode_antimultiplicative".to_string(), r);
    let r = match antipode_inverse(spec) {
        Ok(s_inv) => (0..n)
            .map(|i| {
                s_of(&spec.star(&basis[i]))
                    .max_abs_diff(&spec.star(&apply_matrix(&s_inv, &basis[i])))
            })
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    derived.insert("antipode_star".to_string(), r);
    let r = (0..n)
        .map(|i| {
            let lhs = spec.coproduct(&s_basis[i]);
            let rhs = s_mat
                .matmul(&cops[i].transpose())
                .matmul(&s_mat.transpose());
            lhs.max_abs_diff(&rhs)
        })
        .fold(0.0, f64::max);
    derived.insert("antipode_anticomultiplicative".to_string(), r);
    let mut r_hom: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let l = spec.phi(&prod(&basis[i], &basis[j]));
            r_hom = r_hom.max(l.max_abs_diff(&spec.rep()[i].matmul(&spec.rep()[j])));
        }
    }
    derived.insert("representation_multiplicative".to_string(), r_hom);
    derived.insert("representation_star".to_string(), spec.star_rep_residual());
    derived.insert(
        "representation_unit".to_string(),
        spec.phi(&unit)
            .max_abs_diff(&CMatrix::identity(spec.rep_dim())),
    );

    AxiomReport {
        axioms: ax,
        hopf_axioms: hopf,
        derived_checks: derived,
        tolerance,
        is_weak_hopf,
        is_hopf,
    }
}
