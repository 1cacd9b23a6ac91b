use algebra_spec::*;
use numeric_core::{c64, CMatrix, C64};
use proptest::prelude::*;

fn all_presets() -> Vec<(&'static str, WhaSpec)> {
    vec![
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
}

/// Brute-force `(Δ⊗id)Δ − (id⊗Δ)Δ` on every basis element.
fn coassociativity_residual(s: &WhaSpec) -> f64 {
    let n = s.n();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut left = c64(0.0, 0.0);
                    let mut right = c64(0.0, 0.0);
                    for m in 0..n {
                        left += s.coproduct_coeff(k, m, c) * s.coproduct_coeff(m, a, b);
                        right += s.coproduct_coeff(k, a, m) * s.coproduct_coeff(m, b, c);
                    }
                    worst = worst.max((left - right).norm());
                }
            }
        }
    }
    worst
}

/// Brute-force `Δ(xy) − Δ(x)Δ(y)` on every basis pair.
fn multiplicativity_residual(s: &WhaSpec) -> f64 {
    let n = s.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = s.coproduct(&s.mul(&s.basis(i), &s.basis(j)));
            let (di, dj) = (s.coproduct(&s.basis(i)), s.coproduct(&s.basis(j)));
            let mut rhs = CMatrix::zeros(n, n);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let w = di[(a, b)] * dj[(c, d)];
                            if w == c64(0.0, 0.0) {
                                continue;
                            }
                            let x = s.mul(&s.basis(a), &s.basis(c));
                            let y = s.mul(&s.basis(b), &s.basis(d));
                            for p in 0..n {
                                for q in 0..n {
                                    rhs[(p, q)] += w * x[p] * y[q];
                                }
                            }
                        }
                    }
                }
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    worst
}

#[test]
fn presets_are_coassociative_and_multiplicative() {
    for (name, s) in all_presets() {
        let r1 = coassociativity_residual(&s);
        let r2 = multiplicativity_residual(&s);
        assert!(r1 <= 1e-12, "{name}: coassociativity {r1:e}");
        assert!(r2 <= 1e-12, "{name}: multiplicativity {r2:e}");
    }
}

#[test]
fn representations_are_faithful_star_homomorphisms() {
    for (name, s) in all_presets() {
        assert_eq!(s.rep_rank(), s.n(), "{name}");
        assert!(s.star_rep_residual() <= 1e-12, "{name}");
        for i in 0..s.n() {
            for j in 0..s.n() {
                let (a, b) = (s.basis(i), s.basis(j));
                let r = s
                    .phi(&s.mul(&a, &b))
                    .max_abs_diff(&s.phi(&a).matmul(&s.phi(&b)));
                assert!(r <= 1e-12, "{name}: φ not multiplicative at ({i}, {j})");
            }
        }
    }
}

#[test]
fn z2_preset_matches_sigma_z() {
    let s = z2_sigma_z();
    assert_eq!(s.n(), 2);
    assert_eq!(s.phi(&s.basis(1)), CMatrix::diag_real(&[1.0, -1.0]));
    let dg = s.coproduct(&s.basis(1));
    assert_eq!(dg, CMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]));
}

#[test]
fn trivial_group_is_scalar() {
    let s = build_group_algebra_regular(&GroupTable::trivial()).unwrap();
    assert_eq!(s.n(), 1);
    assert_eq!(s.rep_dim(), 1);
    let f = build_function_algebra(&GroupTable::trivial()).unwrap();
    assert_eq!(f.n(), 1);
    assert_eq!(f.counit_of(&f.unit()), c64(1.0, 0.0));
}

#[test]
fn function_algebra_coproduct_of_delta_e() {
    // Δ(δ_e)(g⊗h) = δ_e(gh), so Δ(δ_e) = δ_e⊗δ_e + δ_g⊗δ_g.
    let s = build_function_algebra(&GroupTable::cyclic(2)).unwrap();
    let d = s.coproduct(&s.basis(0));
    assert_eq!(d, CMatrix::identity(2));
}

#[test]
fn function_algebra_s3_is_commutative_not_cocommutative() {
    let s = build_function_algebra(&GroupTable::symmetric3()).unwrap();
    let n = s.n();
    let mut cocomm: f64 = 0.0;
    for k in 0..n {
        let d = s.coproduct(&s.basis(k));
        cocomm = cocomm.max(d.max_abs_diff(&d.transpose()));
        for j in 0..n {
            let (a, b) = (s.basis(k), s.basis(j));
            assert!(s.mul(&a, &b).max_abs_diff(&s.mul(&b, &a)) == 0.0);
        }
    }
    assert!(cocomm > 0.5);
}

#[test]
fn kac_paljutkin_relations() {
    let h = build_kac_paljutkin();
    let idx = |l: &str| h.labels().iter().position(|s| s == l).unwrap();
    let (x, y, z) = (h.basis(idx("x")), h.basis(idx("y")), h.basis(idx("z")));
    assert_eq!(h.mul(&z, &x), h.basis(idx("yz")));
    assert_eq!(h.mul(&z, &y), h.basis(idx("xz")));
    let z2 = h.mul(&z, &z);
    let expected = AlgebraElement::from_real(&[0.5, 0.0, 0.5, 0.0, 0.5, 0.0, -0.5, 0.0]);
    assert_eq!(z2, expected);
    for i in 0..8 {
        assert_eq!(h.counit_of(&h.basis(i)), c64(1.0, 0.0));
    }
    assert_eq!(h.star(&x), x);
    assert!(h.mul(&h.star(&z), &z).max_abs_diff(&h.unit()) < 1e-15);
}

#[test]
fn lee_yang_table_entries() {
    let s = build_lee_yang();
    let z = lee_yang_zeta();
    assert_eq!(s.n(), 13);
    // Δ(e₁¹¹) = e₁¹¹⊗e₁¹¹ + e₂¹¹⊗e₂²²
    let d = s.coproduct(&s.basis(0));
    let mut expected = CMatrix::zeros(13, 13);
    expected[(0, 0)] = c64(1.0, 0.0);
    expected[(4, 8)] = c64(1.0, 0.0);
    assert_eq!(d, expected);
    // ε(1) = 2
    assert!((s.counit_of(&s.unit()) - c64(2.0, 0.0)).norm() < 1e-15);
    // Δ(1) differs from 1⊗1
    let d1 = s.coproduct(&s.unit());
    let u = s.unit();
    let one_one = CMatrix::from_fn(13, 13, |a, b| u[a] * u[b]);
    assert!(d1.max_abs_diff(&one_one) > 0.1);
    // ζ² coefficient of e₂¹²⊗e₂²¹ in Δ(e₁¹²)
    assert!((s.coproduct_coeff(1, 5, 7) - c64(z * z, 0.0)).norm() < 1e-15);
}

#[test]
fn lee_yang_string_net_tensor_spans_coproduct_image() {
    // Closing two copies of the tensor with every boundary matrix spans the
    // same operator space as φ⊗φ(Δ(e_i)); the joint rank stays at 13.
    let s = build_lee_yang();
    let t = lee_yang_mpo_tensor();
    let mut tensor = vec![c64(0.0, 0.0); 625];
    for ([l, r, u, d], v) in t {
        tensor[((l * 5 + r) * 5 + u) * 5 + d] = v;
    }
    let at = |l: usize, r: usize, u: usize, d: usize| tensor[((l * 5 + r) * 5 + u) * 5 + d];
    let mut columns: Vec<Vec<C64>> = Vec::new();
    for bl in 0..5 {
        for br in 0..5 {
            // boundary closes right bond br back to left bond bl
            let m = CMatrix::from_fn(25, 25, |row, col| {
                let (u1, u2, d1, d2) = (row / 5, row % 5, col / 5, col % 5);
                (0..5)
                    .map(|mid| at(bl, mid, u1, d1) * at(mid, br, u2, d2))
                    .sum()
            });
            columns.push(m.into_data());
        }
    }
    for i in 0..13 {
        let d = s.coproduct(&s.basis(i));
        let mut m = CMatrix::zeros(25, 25);
        for a in 0..13 {
            for b in 0..13 {
                if d[(a, b)] != c64(0.0, 0.0) {
                    s.rep()[a].kron_accumulate(&s.rep()[b], d[(a, b)], &mut m);
                }
            }
        }
        columns.push(m.into_data());
    }
    let stacked = CMatrix::from_columns(&columns);
    let rank = |m: &CMatrix| m.cols() - numeric_core::null_space(m, 1e-9).len();
    let tensor_part = CMatrix::from_columns(&columns[..25]);
    let coproduct_part = CMatrix::from_columns(&columns[25..]);
    assert_eq!(rank(&tensor_part), 13);
    assert_eq!(rank(&coproduct_part), 13);
    assert_eq!(rank(&stacked), 13);
}

#[test]
fn direct_sum_is_valid_and_weak() {
    let s = direct_sum(&z2_sigma_z(), &z2_sigma_z()).unwrap();
    assert_eq!(s.n(), 4);
    assert_eq!(s.rep_dim(), 4);
    assert!(coassociativity_residual(&s) < 1e-15);
    let u = s.unit();
    let one_one = CMatrix::from_fn(4, 4, |a, b| u[a] * u[b]);
    assert!(s.coproduct(&u).max_abs_diff(&one_one) > 0.5);
}

#[test]
fn wrong_rep_count_is_rejected() {
    let r = build_group_algebra(&GroupTable::cyclic(2), vec![CMatrix::identity(2)]);
    assert!(matches!(r, Err(SpecError::Dimension(_))));
}

#[test]
fn unfaithful_rep_is_rejected() {
    let r = build_group_algebra(
        &GroupTable::cyclic(2),
        vec![CMatrix::identity(1), CMatrix::identity(1)],
    );
    assert!(matches!(r, Err(SpecError::NotFaithful { rank: 1, n: 2 })));
}

fn element_strategy(n: usize) -> impl Strategy<Value = AlgebraElement> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| AlgebraElement::new(v.into_iter().map(|(a, b)| c64(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lee_yang_product_is_associative_and_star_antimultiplicative(
        a in element_strategy(13), b in element_strategy(13), c in element_strategy(13)
    ) {
        let s = build_lee_yang();
        let l = s.mul(&s.mul(&a, &b), &c);
        let r = s.mul(&a, &s.mul(&b, &c));
        prop_assert!(l.max_abs_diff(&r) < 1e-12);
        let st = s.star(&s.mul(&a, &b));
        let ts = s.mul(&s.star(&b), &s.star(&a));
        prop_assert!(st.max_abs_diff(&ts) < 1e-12);
    }

    #[test]
    fn kac_paljutkin_phi_is_star_homomorphism(a in element_strategy(8), b in element_strategy(8)) {
        let s = build_kac_paljutkin();
        let lhs = s.phi(&s.mul(&a, &b));
        let rhs = s.phi(&a).matmul(&s.phi(&b));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        prop_assert!(s.phi(&s.star(&a)).max_abs_diff(&s.phi(&a).adjoint()) < 1e-12);
    }
}
