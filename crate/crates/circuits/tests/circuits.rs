use std::sync::OnceLock;

use algebra_spec::*;
use channels::{glue_hopf, state_distance};
use circuits::*;
use mpdo::build_rho;
use numeric_core::{c64, CMatrix, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use wha_engine::{distinguished_elements, DistinguishedElements};

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
        .map(|(name, spec)| {
            let d = distinguished_elements(&spec).unwrap();
            (name, spec, d)
        })
        .collect()
    })
}

fn get(name: &str) -> (&'static WhaSpec, &'static DistinguishedElements) {
    let (_, s, d) = cached().iter().find(|p| p.0 == name).unwrap();
    (s, d)
}

fn random_positive(spec: &WhaSpec, seed: u64) -> AlgebraElement {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let y = AlgebraElement::new(
        (0..spec.n())
            .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    );
    spec.mul(&spec.star(&y), &y)
}

#[test]
fn plan_shapes() {
    let (s, d) = get("z2");
    let p = plan_depth_two(s, d, &d.big_omega, 4).unwrap();
    assert_eq!(p.blocks(), vec![2, 2]);
    assert_eq!(p.layer2.len(), 1);
    assert_eq!((p.layer2[0].first, p.layer2[0].span), (1, 2));
    assert_eq!(p.x_slot, Some(0));
    let p = plan_depth_two(s, d, &d.big_omega, 2).unwrap();
    assert_eq!(p.blocks(), vec![2]);
    assert!(p.layer2.is_empty());
    let p = plan_depth_two(s, d, &d.big_omega, 5).unwrap();
    assert_eq!(p.blocks(), vec![3, 2]);
    assert_eq!(p.layer1[1].first, 3);
    assert_eq!(p.layer2[0].first, 2);
    let p = plan_depth_two(s, d, &d.big_omega, 7).unwrap();
    assert_eq!(p.blocks(), vec![3, 2, 2]);
    assert_eq!(
        p.layer2.iter().map(|g| g.first).collect::<Vec<_>>(),
        vec![2, 4]
    );
    assert_eq!(p.x_slot, Some(1));
    assert!(plan_depth_two(s, d, &d.big_omega, 1).is_err());
    assert_eq!(block_lengths(9), vec![3, 2, 2, 2]);
}

#[test]
fn weak_plans_use_the_trivial_gluing_chain() {
    let (s, d) = get("lee_yang");
    let p = plan_depth_two(s, d, &s.unit(), 6).unwrap();
    assert_eq!(p.target, Target::WeakUnit);
    assert_eq!(p.x_slot, None);
    assert!(p.layer2.iter().all(|g| g.channel.label == "G_1"));
    let scaled = s.unit().scale_real(3.0);
    assert_eq!(classify_target(s, d, &scaled).unwrap(), Target::WeakUnit);
    let chi = &d.dual_characters_in_a[d.trivial_dual_sector];
    assert_eq!(classify_target(s, d, chi).unwrap(), Target::WeakChiHat);
    assert!(matches!(
        plan_depth_two(s, d, &d.big_omega, 4),
        Err(CircuitError::UnsupportedElement(_))
    ));
}

#[test]
fn empty_plan_returns_the_input() {
    let (s, d) = get("z2");
    let mut p = plan_depth_two(s, d, &d.big_omega, 4).unwrap();
    p.layer1.clear();
    p.layer2.clear();
    let input = maximally_mixed(2, 4);
    assert_eq!(run_circuit(&p, &input).unwrap(), input);
    assert!(matches!(
        run_circuit(&p, &maximally_mixed(2, 3)),
        Err(CircuitError::Dimension(_))
    ));
}

#[test]
fn z2_four_site_circuit() {
    let (s, d) = get("z2");
    let p = plan_depth_two(s, d, &d.big_omega, 4).unwrap();
    let out = run_circuit(&p, &maximally_mixed(2, 4)).unwrap();
    let z = CMatrix::diag_real(&[1.0, -1.0]);
    let zzzz = z.kron(&z).kron(&z).kron(&z);
    let closed = (&CMatrix::identity(16) + &zzzz).scale_real(1.0 / 16.0);
    assert!(state_distance(&out, &closed).unwrap().0 <= 1e-9);
}

#[test]
fn z2_six_and_odd_site_circuits() {
    let (s, d) = get("z2");
    for n in [2, 3, 5, 6, 7] {
        let r = verify_trivial_phase(s, d, &d.big_omega, n).unwrap();
        assert!(r.exact && r.distance <= 1e-9, "N={n}: {r:?}");
    }
}

#[test]
fn hopf_circuits_for_random_elements() {
    for name in ["z2", "fun_z2", "s3"] {
        let (s, d) = get(name);
        let x = random_positive(s, 29);
        for n in [2, 3, 4] {
            let r = verify_trivial_phase(s, d, &x, n).unwrap();
            assert!(r.distance <= 1e-9, "{name} N={n}: {r:?}");
        }
    }
}

#[test]
fn kac_paljutkin_four_site_circuit() {
    let (s, d) = get("h8");
    let r = verify_trivial_phase(s, d, &d.big_omega, 4).unwrap();
    assert!(!r.exact && r.distance <= 1e-8, "{r:?}");
    assert!(r.runtime_secs < 60.0);
}

#[test]
fn lee_yang_unit_circuits() {
    let (s, d) = get("lee_yang");
    let p = plan_depth_two(s, d, &s.unit(), 4).unwrap();
    let out = run_circuit(&p, &maximally_mixed(5, 4)).unwrap();
    let target = build_rho(s, d, &s.unit(), 4).unwrap().rho;
    assert!(state_distance(&out, &target).unwrap().0 <= 1e-9);
    for n in [2, 3] {
        let r = verify_trivial_phase(s, d, &s.unit(), n).unwrap();
        assert!(r.distance <= 1e-9, "N={n}: {r:?}");
    }
}

#[test]
fn lee_yang_chi_hat_attempt_is_measured() {
    let (s, d) = get("lee_yang");
    let chi = d.dual_characters_in_a[d.trivial_dual_sector].clone();
    let r = verify_trivial_phase(s, d, &chi, 4).unwrap();
    assert_eq!(r.target, Target::WeakChiHat);
    assert!(r.distance.is_finite() && (0.0..=1.0 + 1e-12).contains(&r.distance));
    println!("chi-hat attempt, N=4: trace distance {:.6e}", r.distance);
}

#[test]
fn swapping_the_layers_breaks_the_circuit() {
    let (s, d) = get("z2");
    // Gluing first and initializing second leaves ρ₂(Ω)⊗ρ₂(Ω), whose
    // difference from ρ₄(Ω) is (Z⊗Z⊗I⊗I + I⊗I⊗Z⊗Z)/16.
    let dist = layer_swap_distance(s, d, &d.big_omega, 4).unwrap();
    assert!(dist > 0.1);
    assert!((dist - 0.5).abs() <= 1e-12, "{dist}");
}

#[test]
fn gluing_is_associative() {
    for name in ["z2", "fun_z2", "s3", "h8"] {
        let (s, d) = get(name);
        for x in [d.big_omega.clone(), random_positive(s, 31)] {
            let r = gluing_associativity(s, d, &x).unwrap();
            assert!(r.order_distance <= 1e-9, "{name}: {r:?}");
            assert!(r.target_distance <= 1e-9, "{name}: {r:?}");
        }
    }
}

#[test]
fn dense_associativity_oracle() {
    for name in ["z2", "fun_z2"] {
        let (s, d) = get(name);
        let x = random_positive(s, 37);
        let r2 = build_rho(s, d, &d.big_omega, 2).unwrap().rho;
        let three = r2.kron(&r2).kron(&r2);
        let go = glue_hopf(s, d, &d.big_omega).unwrap();
        let gx = glue_hopf(s, d, &x).unwrap();
        let dims = [2; 6];
        let left = gx
            .apply_on_sites(
                &go.apply_on_sites(&three, &dims, 1, 2, &[2, 2]).unwrap(),
                &dims,
                3,
                2,
                &[2, 2],
            )
            .unwrap();
        let right = gx
            .apply_on_sites(
                &go.apply_on_sites(&three, &dims, 3, 2, &[2, 2]).unwrap(),
                &dims,
                1,
                2,
                &[2, 2],
            )
            .unwrap();
        let target = build_rho(s, d, &x, 6).unwrap().rho;
        assert!(state_distance(&left, &right).unwrap().0 <= 1e-9, "{name}");
        assert!(state_distance(&left, &target).unwrap().0 <= 1e-9, "{name}");
    }
}

fn random_state(dim: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        let a =
            CMatrix::from_vec(dim, dim, v.into_iter().map(|(x, y)| c64(x, y)).collect()).unwrap();
        let m = &a * &a.adjoint();
        let t = m.trace();
        m.scale(C64::new(1.0, 0.0) / t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn circuit_output_does_not_depend_on_the_input(rho in random_state(16)) {
        let (s, d) = get("fun_z2");
        let p = plan_depth_two(s, d, &d.big_omega, 4).unwrap();
        let out = run_circuit(&p, &rho).unwrap();
        let target = build_rho(s, d, &d.big_omega, 4).unwrap().rho;
        prop_assert!(state_distance(&out, &target).unwrap().0 <= 1e-9);
    }
}
