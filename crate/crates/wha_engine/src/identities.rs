//! Residual suites for the identities satisfied by the distinguished elements.

use std::collections::BTreeMap;

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::{c64, min_eigenvalue, CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::validate_axioms;
use crate::distinguished::DistinguishedElements;
use crate::elements::{antipode_inverse, apply_matrix, compose_functional, inverse};
use crate::error::EngineError;
use crate::structure::{outer, Structure};
use crate::subalg::counital_subalgebras;

/// Tolerance every identity residual must meet.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Seed for the random sample points of the identity suite.
pub const IDENTITY_SEED: u64 = 7;

/// Number of random points for identities quantified over all of `A`.
pub const RANDOM_POINTS: usize = 20;

/// Number of random points for identities quantified over `A^L` or `A^R`.
pub const SUBALGEBRA_POINTS: usize = 5;

type Residuals = BTreeMap<String, f64>;

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> AlgebraElement {
    AlgebraElement::new(
        (0..n)
            .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

fn random_in_span(rng: &mut ChaCha8Rng, basis: &[AlgebraElement], n: usize) -> AlgebraElement {
    let mut x = AlgebraElement::zeros(n);
    for b in basis {
        x.axpy(c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), b);
    }
    x
}

/// Apply one linear map to each factor of a tensor over `A⊗A⊗A`.
fn apply3(t: &[C64], n: usize, m1: &CMatrix, m2: &CMatrix, m3: &CMatrix) -> Vec<C64> {
    let zero = c64(0.0, 0.0);
    let mut s1 = vec![zero; n * n * n];
    for a in 0..n {
        for bc in 0..n * n {
            let v = t[a * n * n + bc];
            if v != zero {
                for p in 0..n {
                    s1[p * n * n + bc] += m1[(p, a)] * v;
                }
            }
        }
    }
    let mut s2 = vec![zero; n * n * n];
    for p in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = s1[(p * n + b) * n + c];
                if v != zero {
                    for q in 0..n {
                        s2[(p * n + q) * n + c] += m2[(q, b)] * v;
                    }
                }
            }
        }
    }
    let mut s3 = vec![zero; n * n * n];
    for pq in 0..n * n {
        for c in 0..n {
            let v = s2[pq * n + c];
            if v != zero {
                for r in 0..n {
                    s3[pq * n + r] += m3[(r, c)] * v;
                }
            }
        }
    }
    s3
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Defining invariants of Ω, ω, ξ and T.
pub fn core_invariants(
    spec: &WhaSpec,
    d: &DistinguishedElements,
) -> Result<Residuals, EngineError> {
    let n = spec.n();
    let st = Structure::new(spec);
    let om = &d.big_omega;
    let mut r = Residuals::new();
    r.insert("Omega_idempotent".into(), spec.mul(om, om).max_abs_diff(om));
    r.insert("Omega_self_adjoint".into(), spec.star(om).max_abs_diff(om));
    let dom = spec.coproduct(om);
    r.insert("Omega_cocentral".into(), dom.max_abs_diff(&dom.transpose()));
    let min_eig = min_eigenvalue(&spec.phi(om).hermitian_part())?;
    r.insert("Omega_positive".into(), (-min_eig).max(0.0));
    let oo = crate::structure::convolve(&st, &d.omega, &d.omega);
    r.insert("omega_idempotent".into(), oo.max_abs_diff(&d.omega));
    r.insert(
        "xi_inverse".into(),
        spec.mul(&d.xi, &d.xi_inv).max_abs_diff(&spec.unit()),
    );
    let t = &d.t_matrix;
    r.insert(
        "T_involution".into(),
        t.matmul(t).max_abs_diff(&CMatrix::identity(n)),
    );
    let mut anti: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (spec.basis(i), spec.basis(j));
            let l = d.t_of(&spec.mul(&a, &b));
            let rr = spec.mul(&d.t_of(&b), &d.t_of(&a));
            anti = anti.max(l.max_abs_diff(&rr));
        }
    }
    r.insert("T_antimultiplicative".into(), anti);
    Ok(r)
}

/// Every identity residual for the distinguished elements of `spec`.
///
/// The `hopf_mid_slice` entry is present only for Hopf algebras.
pub fn identity_suite(spec: &WhaSpec, d: &DistinguishedElements) -> Result<Residuals, EngineError> {
    let n = spec.n();
    let st = Structure::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut r = core_invariants(spec, d)?;
    let unit = spec.unit();
    let s_mat = spec.antipode_matrix();
    let s_of = |x: &AlgebraElement| apply_matrix(s_mat, x);
    let lm = |x: &AlgebraElement| spec.left_mult_matrix(x);
    let rm = |x: &AlgebraElement| spec.right_mult_matrix(x);
    let dom = spec.coproduct(&d.big_omega);
    let d1 = spec.coproduct(&unit);
    let de = d2_eps(d);

    let mut pt: f64 = 0.0;
    let mut pt2: f64 = 0.0;
    let mut twist: f64 = 0.0;
    let t_dom = d.t_matrix.matmul(&dom);
    let xi_inv = &d.xi_inv;
    for _ in 0..RANDOM_POINTS {
        let x = random_element(&mut rng, n);
        let lhs = lm(&d.t_of(&x)).matmul(&dom);
        let rhs = dom.matmul(&lm(&x).transpose());
        pt = pt.max(lhs.max_abs_diff(&rhs));
        let lhs2 = rm(&x).matmul(&t_dom);
        let rhs2 = t_dom.matmul(&lm(&x).transpose());
        pt2 = pt2.max(lhs2.max_abs_diff(&rhs2));
        let a = d.t_of(&spec.star(&x));
        let b = spec.mul(&spec.mul(xi_inv, &spec.star(&d.t_of(&x))), &d.xi);
        twist = twist.max(a.max_abs_diff(&b));
    }
    r.insert("pulling_through".into(), pt);
    r.insert("pulling_through_variant".into(), pt2);
    r.insert("T_star_twist".into(), twist);
    r.insert("T_fixes_xi".into(), d.t_of(&d.xi).max_abs_diff(&d.xi));

    r.insert(
        "omega_antipode_invariance".into(),
        compose_functional(&d.omega, s_mat).max_abs_diff(&d.omega),
    );
    r.insert(
        "omega_T_invariance".into(),
        compose_functional(&d.omega, &d.t_matrix).max_abs_diff(&d.omega),
    );
    let f: Vec<C64> = (0..n)
        .map(|a| d.omega.apply(&spec.mul(&d.xi, &d.t_of(&spec.basis(a)))))
        .collect();
    let on_omega = AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| dom[(a, b)] * f[a]).sum())
            .collect(),
    );
    r.insert("omega_on_Omega".into(), on_omega.max_abs_diff(&unit));

    // Group-like elements.
    let g_inv = inverse(spec, &d.g)?;
    let g_l_inv = inverse(spec, &d.g_l)?;
    let g_r_inv = inverse(spec, &d.g_r)?;
    let mut s2g: f64 = 0.0;
    let mut conj: f64 = 0.0;
    let mut closed: f64 = 0.0;
    let gh = &d.ghat;
    for i in 0..n {
        let x = spec.basis(i);
        let s2 = s_of(&s_of(&x));
        s2g = s2g.max(s2.max_abs_diff(&spec.mul(&spec.mul(&d.g, &x), &g_inv)));
        let dx = spec.coproduct(&x);
        let left = AlgebraElement::new(
            (0..n)
                .map(|b| (0..n).map(|a| gh[a] * dx[(a, b)]).sum())
                .collect(),
        );
        let right = AlgebraElement::new(
            (0..n)
                .map(|a| (0..n).map(|b| dx[(a, b)] * gh[b]).sum())
                .collect(),
        );
        conj = conj
            .max(left.max_abs_diff(&spec.mul(&spec.mul(&d.g_l, &x), &g_l_inv)))
            .max(right.max_abs_diff(&spec.mul(&spec.mul(&d.g_r, &x), &g_r_inv)));
        let mut tcf = AlgebraElement::zeros(n);
        for a in 0..n {
            for b in 0..n {
                if dx[(a, b)] != c64(0.0, 0.0) {
                    tcf.axpy(dx[(a, b)] * gh[b], &s_of(&spec.basis(a)));
                }
            }
        }
        closed = closed.max(tcf.max_abs_diff(&d.t_of(&x)));
    }
    r.insert("antipode_square_conjugation".into(), s2g);
    r.insert("ghat_conjugation".into(), conj);
    r.insert("T_closed_form".into(), closed);
    let gh1_left = AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| gh[a] * d1[(a, b)]).sum())
            .collect(),
    );
    let gh1_right = AlgebraElement::new(
        (0..n)
            .map(|a| (0..n).map(|b| d1[(a, b)] * gh[b]).sum())
            .collect(),
    );
    r.insert("ghat_unit_left".into(), gh1_left.max_abs_diff(&unit));
    r.insert("ghat_unit_right".into(), gh1_right.max_abs_diff(&unit));

    // Dual integral and the two formulas for Ω and ω.
    let dt = spec.coproduct(&d.t_dual_integral);
    let s_inv = antipode_inverse(spec)?;
    let s2_inv = s_inv.matmul(&s_inv);
    r.insert(
        "dual_integral_symmetry".into(),
        dt.max_abs_diff(&s2_inv.matmul(&dt.transpose())),
    );
    let om_left = AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| dt[(a, b)] * gh[a]).sum::<C64>() / de)
            .collect(),
    );
    let om_right = AlgebraElement::new(
        (0..n)
            .map(|a| (0..n).map(|b| dt[(a, b)] * gh[b]).sum::<C64>() / de)
            .collect(),
    );
    r.insert(
        "Omega_from_dual_integral".into(),
        om_left
            .max_abs_diff(&d.big_omega)
            .max(om_right.max_abs_diff(&d.big_omega)),
    );
    let gg = spec.mul(&g_l_inv, &g_r_inv);
    let mut small: f64 = 0.0;
    for i in 0..n {
        let x = spec.basis(i);
        let a = d.dual_haar.apply(&spec.mul(&gg, &x)) / de;
        let b = d.dual_haar.apply(&spec.mul(&x, &gg)) / de;
        small = small
            .max((a - d.omega[i]).norm())
            .max((b - d.omega[i]).norm());
    }
    r.insert("omega_from_dual_haar".into(), small);
    let chiag = d
        .sectors
        .characters
        .iter()
        .zip(&d.sectors.fp_dims)
        .map(|(c, &dd)| (c.apply(&d.g) - c64(d.eps_one * dd, 0.0)).norm())
        .fold(0.0, f64::max);
    r.insert("character_of_g".into(), chiag);
    r.insert(
        "xi_factorization".into(),
        d.xi.max_abs_diff(&spec.mul(&d.xi_l, &d.xi_r)),
    );
    r.insert("dimension_balance".into(), (d.d2 - d.d2_hat).abs());

    // Counital subalgebras.
    let (al, ar) = counital_subalgebras(spec);
    let mut comm: f64 = 0.0;
    for a in &al {
        for b in &ar {
            comm = comm.max(spec.mul(a, b).max_abs_diff(&spec.mul(b, a)));
        }
    }
    r.insert("AL_AR_commute".into(), comm);
    let t_al = al
        .iter()
        .map(|a| d.t_of(a).max_abs_diff(&s_of(a)))
        .fold(0.0, f64::max);
    let t_ar = ar
        .iter()
        .map(|b| d.t_of(b).max_abs_diff(&spec.star(&s_of(&spec.star(b)))))
        .fold(0.0, f64::max);
    r.insert("T_on_AL".into(), t_al);
    r.insert("T_on_AR".into(), t_ar);

    let d1_3 = st.delta_power(unit.coeffs(), 2)?;
    let id = CMatrix::identity(n);
    let s1s = apply3(&d1_3, n, s_mat, &id, s_mat);
    let mut xr_twist: f64 = 0.0;
    let mut vac: f64 = 0.0;
    for _ in 0..SUBALGEBRA_POINTS {
        let xl = random_in_span(&mut rng, &al, n);
        let yr = random_in_span(&mut rng, &ar, n);
        let a = spec.mul(&d.xi_r, &s_of(&spec.star(&xl)));
        let b = spec.mul(&spec.star(&s_of(&xl)), &d.xi_r);
        let c = spec.mul(&s_of(&yr), &d.xi_l);
        let e = spec.mul(&d.xi_l, &spec.star(&s_of(&spec.star(&yr))));
        xr_twist = xr_twist.max(a.max_abs_diff(&b)).max(c.max_abs_diff(&e));
        let lhs = apply3(&s1s, n, &lm(&xl), &id, &rm(&yr));
        let rhs = apply3(&s1s, n, &id, &lm(&yr).matmul(&rm(&xl)), &id);
        vac = vac.max(max_diff(&lhs, &rhs));
    }
    r.insert("xi_twisted_star".into(), xr_twist);
    r.insert("vacuum_pulling_through".into(), vac);

    let h_om = AlgebraElement::new(
        (0..n)
            .map(|b| (0..n).map(|a| dom[(a, b)] * d.dual_haar[a]).sum())
            .collect(),
    );
    r.insert(
        "dual_haar_on_Omega".into(),
        h_om.max_abs_diff(&unit.scale(c64(1.0, 0.0) / de)),
    );
    let mid = |f: &dyn Fn(usize) -> C64| {
        CMatrix::from_fn(n, n, |a, c| {
            (0..n).map(|b| d1_3[(a * n + b) * n + c] * f(b)).sum()
        })
    };
    let trvac1 = mid(&|b| d.dual_haar[b]);
    r.insert(
        "trivial_vacuum_trace".into(),
        trvac1.max_abs_diff(&outer(&unit, &unit).scale_real(1.0 / d.eps_one)),
    );
    let trvac2 = mid(&|b| d.omega[b]);
    let expected = outer(&inverse(spec, &d.xi_r)?, &inverse(spec, &d.xi_l)?).scale_real(d.d2);
    r.insert("vacuum_omega_trace".into(), trvac2.max_abs_diff(&expected));
    let mut outer_omega = AlgebraElement::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = d1_3[(a * n + b) * n + c] * d.omega[a] * d.omega[c];
                if v != c64(0.0, 0.0) {
                    outer_omega.axpy(v, &spec.basis(b));
                }
            }
        }
    }
    let omega_one = d.omega.apply(&unit);
    r.insert(
        "omega_outer_trace".into(),
        outer_omega.max_abs_diff(&d.xi_inv.scale(omega_one * d.d2)),
    );

    if validate_axioms(spec).is_hopf {
        let one_one = outer(&unit, &unit);
        let mut m: f64 = 0.0;
        for i in 0..n {
            let x = spec.basis(i);
            let d3 = st.delta_power(x.coeffs(), 2)?;
            let sl = CMatrix::from_fn(n, n, |a, c| {
                (0..n).map(|b| d3[(a * n + b) * n + c] * d.omega[b]).sum()
            });
            m = m.max(sl.max_abs_diff(&one_one.scale(d.omega.apply(&x))));
        }
        r.insert("hopf_mid_slice".into(), m);
    }
    Ok(r)
}

fn d2_eps(d: &DistinguishedElements) -> C64 {
    c64(d.d2 * d.eps_one, 0.0)
}

/// Residuals of the Hopf specializations `S² = id`, `g = 1`, `Ω = h`,
/// `T = S`, `t = 𝒟²Ω`, `ξ = 𝒟²1` and `g_L = g_R = 𝒟⁻¹1`.
pub fn hopf_specialization_report(
    spec: &WhaSpec,
    d: &DistinguishedElements,
) -> Result<Residuals, EngineError> {
    let report = validate_axioms(spec);
    if !report.is_hopf {
        return Err(EngineError::NotHopf(format!(
            "Δ(1) − 1⊗1 residual {:.3e}",
            report.hopf_axioms["unit_coproduct"]
        )));
    }
    let n = spec.n();
    let unit = spec.unit();
    let s = spec.antipode_matrix();
    let mut r = Residuals::new();
    r.insert(
        "antipode_squared_identity".into(),
        s.matmul(s).max_abs_diff(&CMatrix::identity(n)),
    );
    r.insert("g_is_unit".into(), d.g.max_abs_diff(&unit));
    r.insert("Omega_is_haar".into(), d.big_omega.max_abs_diff(&d.haar));
    r.insert("T_is_antipode".into(), d.t_matrix.max_abs_diff(s));
    r.insert(
        "dual_integral_is_scaled_Omega".into(),
        d.t_dual_integral
            .max_abs_diff(&d.big_omega.scale_real(d.d2)),
    );
    r.insert(
        "xi_is_scalar".into(),
        d.xi.max_abs_diff(&unit.scale_real(d.d2)),
    );
    let root = unit.scale_real(1.0 / d.d2.sqrt());
    r.insert(
        "gL_gR_scalar".into(),
        d.g_l.max_abs_diff(&root).max(d.g_r.max_abs_diff(&root)),
    );
    Ok(r)
}
