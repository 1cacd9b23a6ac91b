use std::sync::OnceLock;

use algebra_spec::*;
use numeric_core::{c64, C64};
use proptest::prelude::*;
use wha_engine::elements::{apply_matrix, eps_s, eps_t};
use wha_engine::structure::apply_left;
use wha_engine::*;

fn cached() -> &'static Vec<(WhaSpec, DistinguishedElements)> {
    static CACHE: OnceLock<Vec<(WhaSpec, DistinguishedElements)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        [
            z2_sigma_z(),
            build_function_algebra(&GroupTable::cyclic(2)).unwrap(),
            build_group_algebra_regular(&GroupTable::symmetric3()).unwrap(),
            build_kac_paljutkin(),
            build_lee_yang(),
        ]
        .into_iter()
        .map(|s| {
            let d = distinguished_elements(&s).unwrap();
            (s, d)
        })
        .collect()
    })
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| c64(a, b)).collect())
}

fn preset_with_pair() -> impl Strategy<Value = (usize, AlgebraElement, AlgebraElement)> {
    (0usize..5).prop_flat_map(|p| {
        let n = cached()[p].0.n();
        (Just(p), coeffs(n), coeffs(n))
            .prop_map(|(p, a, b)| (p, AlgebraElement::new(a), AlgebraElement::new(b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_is_an_antimultiplicative_involution((p, x, y) in preset_with_pair()) {
        let (s, d) = &cached()[p];
        prop_assert!(d.t_of(&d.t_of(&x)).max_abs_diff(&x) <= 1e-9);
        let lhs = d.t_of(&s.mul(&x, &y));
        let rhs = s.mul(&d.t_of(&y), &d.t_of(&x));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn omega_is_a_positive_invariant_trace((p, x, y) in preset_with_pair()) {
        let (s, d) = &cached()[p];
        let wxy = d.omega.apply(&s.mul(&x, &y));
        let wyx = d.omega.apply(&s.mul(&y, &x));
        prop_assert!((wxy - wyx).norm() <= 1e-10);
        let pos = d.omega.apply(&s.mul(&s.star(&x), &x));
        prop_assert!(pos.re >= -1e-12 && pos.im.abs() <= 1e-12);
        prop_assert!((d.omega.apply(&d.t_of(&x)) - d.omega.apply(&x)).norm() <= 1e-10);
        let sx = apply_matrix(s.antipode_matrix(), &x);
        prop_assert!((d.omega.apply(&sx) - d.omega.apply(&x)).norm() <= 1e-10);
    }

    #[test]
    fn coproduct_is_multiplicative_and_star_preserving((p, x, y) in preset_with_pair()) {
        let (s, _) = &cached()[p];
        let st = Structure::new(s);
        let lhs = s.coproduct(&s.mul(&x, &y));
        let rhs = st.mul2(&s.coproduct(&x), &s.coproduct(&y));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        let lhs = s.coproduct(&s.star(&x));
        let rhs = wha_engine::elements::star2(s, &s.coproduct(&x));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn counital_maps_are_idempotent((p, x, _y) in preset_with_pair()) {
        let (s, _) = &cached()[p];
        let t = eps_t(s, &x);
        prop_assert!(eps_t(s, &t).max_abs_diff(&t) <= 1e-10);
        let u = eps_s(s, &x);
        prop_assert!(eps_s(s, &u).max_abs_diff(&u) <= 1e-10);
    }

    #[test]
    fn delta_power_bracketings_agree((p, x, _y) in preset_with_pair()) {
        let (s, _) = &cached()[p];
        let st = Structure::new(s);
        let a = st.delta_power(x.coeffs(), 2).unwrap();
        let b = st.delta_power_right(x.coeffs(), 2).unwrap();
        let r = a.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        prop_assert!(r <= 1e-10);
    }

    #[test]
    fn radon_nikodym_reconstructs((p, x, _y) in preset_with_pair()) {
        let (s, d) = &cached()[p];
        let (mu, _) = radon_nikodym(s, &x, &d.big_omega).unwrap();
        let back = apply_left(&mu, &s.coproduct(&d.big_omega));
        prop_assert!(back.max_abs_diff(&x) <= 1e-9);
    }

    #[test]
    fn characters_are_multiplicative_on_one_dimensional_sectors((p, x, y) in preset_with_pair()) {
        let (s, d) = &cached()[p];
        for (chi, &dim) in d.sectors.characters.iter().zip(&d.sectors.irrep_dims) {
            if dim == 1 {
                let lhs = chi.apply(&s.mul(&x, &y));
                prop_assert!((lhs - chi.apply(&x) * chi.apply(&y)).norm() <= 1e-10);
            }
        }
    }
}
