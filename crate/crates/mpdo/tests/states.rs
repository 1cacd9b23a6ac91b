use std::sync::OnceLock;

use algebra_spec::*;
use mpdo::*;
use numeric_core::{c64, is_psd, partial_trace, CMatrix, C64};
use proptest::prelude::*;
use wha_engine::{delta_power, distinguished_elements, DistinguishedElements};

fn cached() -> &'static Vec<(&'static str, WhaSpec, DistinguishedElements)> {
    static CACHE: OnceLock<Vec<(&'static str, WhaSpec, DistinguishedElements)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        [
            ("z2", z2_sigma_z()),
            (
                "fun_z2",
                build_function_algebra(&GroupTable::cyclic(2)).unwrap(),
            ),
            (
                "s3",
                build_group_algebra_regular(&GroupTable::symmetric3()).unwrap(),
            ),
            ("h8", build_kac_paljutkin()),
            ("lee_yang", build_lee_yang()),
        ]
        .into_iter()
        .map(|(name, s)| {
            let d = distinguished_elements(&s).unwrap();
            (name, s, d)
        })
        .collect()
    })
}

fn get(name: &str) -> (&'static WhaSpec, &'static DistinguishedElements) {
    let (_, s, d) = cached().iter().find(|(n, _, _)| *n == name).unwrap();
    (s, d)
}

fn kron_all(ms: &[&CMatrix]) -> CMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kron(m))
}

/// Term-by-term sum over the nonzero entries of `Δ^{(N-1)}(x)`.
fn naive_sum(spec: &WhaSpec, factors: &[CMatrix], x: &AlgebraElement, sites: usize) -> CMatrix {
    let n = spec.n();
    let t = delta_power(spec, x, sites - 1).unwrap();
    let dim = factors[0].rows().pow(sites as u32);
    let mut out = CMatrix::zeros(dim, dim);
    for (flat, &c) in t.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        let mut idx = vec![0; sites];
        let mut rest = flat;
        for k in (0..sites).rev() {
            idx[k] = rest % n;
            rest /= n;
        }
        let ms: Vec<&CMatrix> = idx.iter().map(|&i| &factors[i]).collect();
        out.axpy(c, &kron_all(&ms));
    }
    out
}

fn naive_rho(
    spec: &WhaSpec,
    d: &DistinguishedElements,
    x: &AlgebraElement,
    sites: usize,
) -> CMatrix {
    let w = d.omega.apply(x).re;
    naive_sum(spec, &weighted_factors(spec, d), x, sites).scale_real(1.0 / w)
}

fn pauli_z() -> CMatrix {
    CMatrix::diag_real(&[1.0, -1.0])
}

fn positive(spec: &WhaSpec, y: &AlgebraElement) -> AlgebraElement {
    spec.mul(&spec.star(y), y)
}

#[test]
fn z2_omega_state_closed_form() {
    let (s, d) = get("z2");
    let st = build_rho(s, d, &d.big_omega, 3).unwrap();
    let i = CMatrix::identity(2);
    let z = pauli_z();
    let expected = (&kron_all(&[&i, &i, &i]) + &kron_all(&[&z, &z, &z])).scale_real(0.125);
    assert!(st.rho.max_abs_diff(&expected) <= 1e-15);
    assert_eq!((st.n_sites, st.site_dim), (3, 2));
    assert!((st.norm_omega - 0.5).abs() <= 1e-15);
}

#[test]
fn z2_generic_state_closed_form() {
    // ρ_N(x) = 2^{-N}(1 + (x,g)/(x,e) σ_z^{⊗N}) with x = e + 0.4g.
    let (s, d) = get("z2");
    let x = AlgebraElement::from_real(&[1.0, 0.4]);
    for n in 1..=4 {
        let st = build_rho(s, d, &x, n).unwrap();
        let ids: Vec<CMatrix> = (0..n).map(|_| CMatrix::identity(2)).collect();
        let zs: Vec<CMatrix> = (0..n).map(|_| pauli_z()).collect();
        let one = kron_all(&ids.iter().collect::<Vec<_>>());
        let zz = kron_all(&zs.iter().collect::<Vec<_>>());
        let expected = (&one + &zz.scale_real(0.4)).scale_real(0.5f64.powi(n as i32));
        assert!(st.rho.max_abs_diff(&expected) <= 1e-15, "N = {n}");
    }
}

#[test]
fn single_site_state() {
    for (name, s, d) in cached() {
        let st = build_rho(s, d, &d.big_omega, 1).unwrap();
        let expected = s
            .phi(&s.mul(&d.c_omega, &d.big_omega))
            .scale_real(1.0 / d.omega_of(&d.big_omega));
        assert!(st.rho.max_abs_diff(&expected) <= 1e-12, "{name}");
        assert!((st.rho.trace() - 1.0).norm() <= 1e-12, "{name}");
    }
}

#[test]
fn lee_yang_two_site_unit_state() {
    let (s, d) = get("lee_yang");
    let st = build_rho(s, d, &s.unit(), 2).unwrap();
    assert_eq!(st.rho.rows(), 25);
    assert!(is_psd(&st.rho, 1e-10).unwrap());
    assert!((st.rho.trace() - 1.0).norm() <= 1e-10);
    // Oracle: Σ_{ab} Δ(1)_{ab} φ(c_ω e_a)⊗φ(c_ω e_b) / ω(1).
    let d1 = s.coproduct(&s.unit());
    let mut expected = CMatrix::zeros(25, 25);
    for a in 0..13 {
        for b in 0..13 {
            if d1[(a, b)].norm() > 0.0 {
                let fa = s.phi(&s.mul(&d.c_omega, &s.basis(a)));
                let fb = s.phi(&s.mul(&d.c_omega, &s.basis(b)));
                expected.axpy(d1[(a, b)], &fa.kron(&fb));
            }
        }
    }
    let expected = expected.scale_real(1.0 / d.omega_of(&s.unit()));
    assert!(st.rho.max_abs_diff(&expected) <= 1e-12);
}

#[test]
fn states_match_the_naive_sum() {
    for (name, s, d) in cached() {
        let xs = [
            d.big_omega.clone(),
            s.unit(),
            positive(s, &AlgebraElement::from_real(&vec![0.3; s.n()])),
        ];
        for x in &xs {
            for n in 1..=3 {
                if s.rep_dim().pow(n as u32) > 200 {
                    continue;
                }
                let st = build_rho(s, d, x, n).unwrap();
                let r = st.rho.max_abs_diff(&naive_rho(s, d, x, n));
                assert!(r <= 1e-12, "{name} N = {n}: {r:e}");
            }
        }
    }
}

#[test]
fn omega_states_are_shift_invariant() {
    for (name, s, d) in cached() {
        for n in 2..=3 {
            let st = build_rho(s, d, &d.big_omega, n).unwrap();
            assert!(
                st.cyclic_shift_residual().unwrap() <= 1e-10,
                "{name} N = {n}"
            );
        }
    }
}

#[test]
fn non_positive_elements_are_refused() {
    let (s, d) = get("z2");
    let g = s.basis(1);
    assert!(matches!(
        build_rho(s, d, &g, 2),
        Err(MpdoError::NotPositive(_))
    ));
    let neg = s.unit().scale_real(-1.0);
    assert!(matches!(
        build_rho(s, d, &neg, 2),
        Err(MpdoError::NotPositive(_))
    ));
    let zero = AlgebraElement::zeros(2);
    assert!(matches!(
        build_rho(s, d, &zero, 2),
        Err(MpdoError::NotPositive(_))
    ));
    assert!(matches!(
        build_rho(s, d, &s.unit(), 0),
        Err(MpdoError::Sites(_))
    ));
}

#[test]
fn budget_admits_lee_yang_five_sites_and_refuses_six() {
    let (s, d) = get("lee_yang");
    let st = build_rho(s, d, &d.big_omega, 5).unwrap();
    assert_eq!(st.rho.rows(), 3125);
    let inv = st.invariants().unwrap();
    assert!(inv.pass() && inv.min_eigenvalue.is_none());
    let err = build_rho(s, d, &d.big_omega, 6).unwrap_err();
    assert!(err.is_budget(), "{err}");
}

#[test]
fn z2_bare_tensor_matches_the_coefficient_table() {
    let (s, d) = get("z2");
    let t = export_mpo_tensor(s, d, MpoForm::Bare);
    let nz = t.nonzero(1e-15);
    let expected = vec![
        ((0, 0, 0, 0), c64(1.0, 0.0)),
        ((0, 0, 1, 1), c64(1.0, 0.0)),
        ((1, 1, 0, 0), c64(1.0, 0.0)),
        ((1, 1, 1, 1), c64(-1.0, 0.0)),
    ];
    assert_eq!(nz, expected);
}

#[test]
fn single_site_closure_is_the_representation() {
    for (name, s, d) in cached() {
        let t = export_mpo_tensor(s, d, MpoForm::Bare);
        for i in 0..s.n() {
            let x = s.basis(i);
            let c = t.close(&t.boundary(&x), 1).unwrap();
            assert!(c.max_abs_diff(&s.phi(&x)) <= 1e-12, "{name}");
        }
    }
}

#[test]
fn closures_reproduce_represented_coproducts() {
    for (name, s, d) in cached() {
        let bare = export_mpo_tensor(s, d, MpoForm::Bare);
        let weighted = export_mpo_tensor(s, d, MpoForm::Weighted);
        let x = positive(
            s,
            &AlgebraElement::from_real(
                &(0..s.n()).map(|i| 0.2 + 0.1 * i as f64).collect::<Vec<_>>(),
            ),
        );
        for n in 1..=4 {
            if s.rep_dim().pow(n as u32) > 700 {
                continue;
            }
            let closed = bare.close(&bare.boundary(&x), n).unwrap();
            let oracle = naive_sum(s, s.rep(), &x, n);
            assert!(closed.max_abs_diff(&oracle) <= 1e-9, "{name} N = {n}");
            let w = weighted.close(&weighted.boundary(&x), n).unwrap();
            let st = build_rho(s, d, &x, n).unwrap();
            assert!(
                w.scale_real(1.0 / st.norm_omega).max_abs_diff(&st.rho) <= 1e-9,
                "{name} N = {n}"
            );
        }
    }
}

/// The 5×5 tensor listed for the Lee–Yang MPOs, indices (left, right, up, down).
fn lee_yang_listed_tensor() -> MpoTensor {
    let z = lee_yang_zeta();
    let ones = [
        (1, 1, 1, 1),
        (1, 2, 3, 3),
        (2, 1, 4, 4),
        (2, 2, 2, 2),
        (2, 2, 5, 5),
        (3, 3, 2, 1),
        (3, 4, 4, 3),
        (3, 5, 5, 3),
        (4, 4, 1, 2),
        (5, 4, 4, 5),
        (5, 5, 2, 2),
    ];
    let mut entries: Vec<((usize, usize, usize, usize), C64)> =
        ones.iter().map(|&t| (t, c64(1.0, 0.0))).collect();
    entries.push(((4, 5, 3, 5), c64(z, 0.0)));
    entries.push(((5, 3, 5, 4), c64(z, 0.0)));
    entries.push(((4, 3, 3, 4), c64(z * z, 0.0)));
    entries.push(((5, 5, 5, 5), c64(-z * z, 0.0)));
    MpoTensor::from_coefficients(5, 5, |l, r, p, q| {
        entries
            .iter()
            .find(|(t, _)| *t == (l + 1, r + 1, p + 1, q + 1))
            .map_or(c64(0.0, 0.0), |(_, v)| *v)
    })
}

fn joint_rank(ops: &[CMatrix]) -> usize {
    let cols: Vec<Vec<C64>> = ops.iter().map(|m| m.data().to_vec()).collect();
    let a = CMatrix::from_columns(&cols);
    let zero = CMatrix::zeros(a.rows(), 1);
    numeric_core::lstsq(&a, &zero).unwrap().rank
}

#[test]
fn lee_yang_listed_tensor_spans_the_represented_coproducts() {
    let (s, _) = get("lee_yang");
    let listed = lee_yang_listed_tensor();
    for n in [2usize, 3] {
        let listed_ops: Vec<CMatrix> = (0..25)
            .map(|b| {
                let mut bd = CMatrix::zeros(5, 5);
                bd[(b / 5, b % 5)] = c64(1.0, 0.0);
                listed.close(&bd, n).unwrap()
            })
            .collect();
        let ours: Vec<CMatrix> = (0..13)
            .map(|i| naive_sum(s, s.rep(), &s.basis(i), n))
            .collect();
        let both: Vec<CMatrix> = listed_ops.iter().chain(&ours).cloned().collect();
        assert_eq!(joint_rank(&listed_ops), 13, "N = {n}");
        assert_eq!(joint_rank(&ours), 13, "N = {n}");
        assert_eq!(joint_rank(&both), 13, "N = {n}");
    }
}

#[test]
fn z2_marginal_closed_form() {
    let (s, d) = get("z2");
    let st = build_rho(s, d, &d.big_omega, 3).unwrap();
    // σ_z is traceless, so the marginal is I⊗I/4, generated by Ω₍₁₎ω(Ω₍₂₎) = e/2.
    let marginal = st.trace_last().unwrap();
    assert!(marginal.max_abs_diff(&CMatrix::identity(4).scale_real(0.25)) <= 1e-12);
    assert!(
        omega_right_slice(s, d, &d.big_omega).max_abs_diff(&AlgebraElement::from_real(&[0.5, 0.0]))
            <= 1e-12
    );
    let z = pauli_z();
    let rho2 = (&CMatrix::identity(4) + &z.kron(&z)).scale_real(0.25);
    assert!(
        build_rho(s, d, &d.big_omega, 2)
            .unwrap()
            .rho
            .max_abs_diff(&rho2)
            <= 1e-12
    );
    assert!((numeric_core::trace_distance(&marginal, &rho2).unwrap() - 0.5).abs() <= 1e-12);
    let r = marginal_check(s, d, &d.big_omega, 3).unwrap();
    assert!(r.residual <= 1e-12);
    assert!((r.normalization - 1.0).abs() <= 1e-12);
    assert!(r.xi_residual.unwrap() <= 1e-12);
}

#[test]
fn marginal_checks_on_every_preset() {
    for (name, s, d) in cached() {
        let n = if s.rep_dim() > 5 { 2 } else { 3 };
        for x in [d.big_omega.clone(), s.unit()] {
            let r = marginal_check(s, d, &x, n).unwrap();
            assert!(r.residual <= 1e-9, "{name}: {r:?}");
            assert!((r.normalization - 1.0).abs() <= 1e-10, "{name}");
        }
        let r = marginal_check(s, d, &d.big_omega, n).unwrap();
        assert!(r.xi_residual.unwrap() <= 1e-9, "{name}");
        assert!(marginal_check(s, d, &s.unit(), 1).is_err());
    }
}

#[test]
fn marginal_trace_is_preserved() {
    let (s, d) = get("lee_yang");
    let st = build_rho(s, d, &s.unit(), 2).unwrap();
    let m = partial_trace(&st.rho, &[5, 5], &[0]).unwrap();
    assert!((m.trace() - 1.0).norm() <= 1e-12);
}

#[test]
fn idempotence_transfers_to_every_basis_element() {
    for (name, s, d) in cached() {
        assert!(idempotence_transfer_residual(s, d) <= 1e-10, "{name}");
    }
}

#[test]
fn dump_round_trip() {
    let (s, d) = get("lee_yang");
    let st = build_rho(s, d, &d.big_omega, 2)
        .unwrap()
        .with_label("omega");
    let mut buf = Vec::new();
    write_matrix(&mut buf, &st.rho).unwrap();
    assert_eq!(buf.len(), 16 * 625);
    let back = read_matrix(buf.as_slice(), 25, 25).unwrap();
    assert_eq!(back, st.rho);
    let meta = StateMetadata::of(&st);
    let text = serde_json::to_string(&meta).unwrap();
    let parsed: StateMetadata = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, meta);
    assert_eq!(parsed.x_label, "omega");
    assert!(read_matrix(&buf[..100], 25, 25).is_err());
}

fn preset_and_coeffs() -> impl Strategy<Value = (usize, Vec<C64>)> {
    (0usize..5).prop_flat_map(|p| {
        let n = cached()[p].1.n();
        (
            Just(p),
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
                .prop_map(|v| v.into_iter().map(|(a, b)| c64(a, b)).collect()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn positive_elements_give_states((p, c) in preset_and_coeffs()) {
        let (_, s, d) = &cached()[p];
        let x = positive(s, &AlgebraElement::new(c));
        prop_assume!(d.omega_of(&x) > 1e-6);
        let n = if s.rep_dim() > 5 { 1 } else { 2 };
        let st = build_rho(s, d, &x, n).unwrap();
        let inv = st.invariants().unwrap();
        prop_assert!(inv.pass(), "{:?}", inv);
        prop_assert!(st.rho.max_abs_diff(&naive_rho(s, d, &x, n)) <= 1e-10);
    }

    #[test]
    fn marginals_follow_the_omega_slice((p, c) in preset_and_coeffs()) {
        let (_, s, d) = &cached()[p];
        let x = positive(s, &AlgebraElement::new(c));
        prop_assume!(d.omega_of(&x) > 1e-6);
        let r = marginal_check(s, d, &x, 2).unwrap();
        prop_assert!(r.residual <= 1e-9);
        prop_assert!((r.normalization - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn lee_yang_four_site_spectrum_is_finite() {
    let spec = algebra_spec::build_lee_yang();
    let d = wha_engine::distinguished_elements(&spec).unwrap();
    let state = build_rho(&spec, &d, &d.big_omega, 4).unwrap();
    let inv = state.invariants().unwrap();
    let min = inv.min_eigenvalue.unwrap();
    assert!(min.is_finite() && min >= -1e-10, "{inv:?}");
}
