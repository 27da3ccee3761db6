use proptest::prelude::*;

use ordiso::classify::{phi_mp, BlockMapSpec, EffectAutoSpec};
use ordiso::halfplane::{cayley, f_r_hermitian, in_half_plane, inverse_cayley, neg_inverse};
use ordiso::linalg::{loewner_compare, sqrt_psd, CMatrix, Hermitian, LoewnerOrder, Tolerances};
use ordiso::monotone::{divided_difference, PickRepresentation, ScalarFunction};
use ordiso::phimap::{in_u_a, phi_apply, theta_apply};
use ordiso::sample::Sampler;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn rel(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).frobenius() / (1.0 + b.frobenius())
}

fn seed_dim(max: usize) -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn loewner_order_is_antisymmetric((seed, n) in seed_dim(6)) {
        let mut rng = Sampler::new(seed);
        let x = rng.hermitian(n);
        let r = 1 + rng.index(n);
        let y = x.plus(&rng.psd(n, r));
        let t = tol();
        prop_assert!(loewner_compare(&x, &y, &t).unwrap().is_leq());
        prop_assert!(loewner_compare(&y.negated(), &x.negated(), &t).unwrap().is_leq());
        prop_assert_eq!(loewner_compare(&x, &x, &t).unwrap(), LoewnerOrder::Equal);
    }

    #[test]
    fn congruence_keeps_inertia((seed, n) in seed_dim(6)) {
        let mut rng = Sampler::new(seed);
        let vals: Vec<f64> = (0..n).map(|_| if rng.coin() { rng.uniform(0.2, 2.0) } else { -rng.uniform(0.2, 2.0) }).collect();
        let x = rng.with_spectrum(&vals);
        let t = rng.invertible(n, 0.3, 3.0);
        prop_assert_eq!(x.inertia(&tol()), x.congruence(&t).inertia(&tol()));
    }

    #[test]
    fn sqrt_squares_back((seed, n) in seed_dim(6)) {
        let mut rng = Sampler::new(seed);
        let r = 1 + rng.index(n);
        let p = rng.psd(n, r);
        let r = sqrt_psd(&p, &tol()).unwrap();
        prop_assert!(rel(&(r.as_matrix() * r.as_matrix()), &p) < 1e-9);
    }

    #[test]
    fn theta_inverts((seed, n) in seed_dim(5)) {
        let mut rng = Sampler::new(seed);
        let a = rng.hermitian(n);
        let x = rng.complex(n).scale(0.3 / (1.0 + a.spectral_norm()));
        let t = tol();
        let y = theta_apply(&a, &x, &t).unwrap();
        let back = theta_apply(&a.negated(), &y, &t).unwrap();
        prop_assert!(rel(&back, &x) < 1e-9);
    }

    #[test]
    fn small_points_are_in_the_component((seed, n) in seed_dim(5)) {
        let mut rng = Sampler::new(seed);
        let a = rng.hermitian(n);
        let x = rng.hermitian(n).scaled(0.5 / (1.0 + a.spectral_norm()) / (1.0 + n as f64));
        prop_assert!(in_u_a(&a, &x, &tol()).unwrap());
        prop_assert!(in_u_a(&a, &Hermitian::zeros(n), &tol()).unwrap());
        let back = phi_apply(&a.negated(), &phi_apply(&a, &x, &tol()).unwrap(), &tol()).unwrap();
        prop_assert!(rel(&back, &x) < 1e-9);
    }

    #[test]
    fn cayley_round_trip((seed, n) in seed_dim(5)) {
        let mut rng = Sampler::new(seed);
        let y = rng.contraction(n, 0.95);
        let t = tol();
        let z = cayley(&y, &t).unwrap();
        prop_assert!(in_half_plane(&z, &t).unwrap().0);
        prop_assert!((&inverse_cayley(&z, &t).unwrap() - &y).frobenius() < 1e-10);
    }

    #[test]
    fn neg_inverse_is_an_involution((seed, n) in seed_dim(5)) {
        let mut rng = Sampler::new(seed);
        let z = rng.half_plane(n);
        let t = tol();
        let w = neg_inverse(&z, &t).unwrap();
        prop_assert!(in_half_plane(&w, &t).unwrap().0);
        prop_assert!(rel(&neg_inverse(&w, &t).unwrap(), &z) < 1e-10);
    }

    #[test]
    fn f_r_inverse_law(r in prop_oneof![Just(-2.0), Just(-0.5), Just(0.3), Just(0.9)], (seed, n) in seed_dim(5)) {
        let mut rng = Sampler::new(seed);
        let x = rng.effect(n);
        let s = r / (r - 1.0);
        let t = tol();
        let back = f_r_hermitian(s, &f_r_hermitian(r, &x, &t).unwrap(), &t).unwrap();
        prop_assert!(rel(&back, &x) < 1e-9);
    }

    #[test]
    fn phi_mp_inverse_round_trip(seed in any::<u64>(), n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let specs = BlockMapSpec::all(n);
        let spec = specs[pick.index(specs.len())];
        let mut rng = Sampler::new(seed);
        let mut x = rng.hermitian(n).into_matrix();
        if spec.m > 0 {
            let vals: Vec<f64> = (0..spec.m).map(|i| if i < spec.p { 1.0 } else { -1.0 } * rng.uniform(0.3, 2.0)).collect();
            x.set_block(0, 0, rng.with_spectrum(&vals).as_matrix());
        }
        let x = Hermitian::hermitian_part(&x);
        let t = tol();
        let y = phi_mp(&spec, &x, &t).unwrap();
        let back = phi_mp(&spec.inverse(), &y, &t).unwrap();
        prop_assert!(rel(&back, &x) < 1e-9);
    }

    #[test]
    fn effect_automorphism_fixes_endpoints((seed, n) in seed_dim(5), transpose in any::<bool>()) {
        let mut rng = Sampler::new(seed);
        let t = tol();
        let spec = EffectAutoSpec::new(rng.invertible(n, 0.3, 2.5), transpose, &t).unwrap();
        let f = |x: &Hermitian| ordiso::classify::effect_automorphism(&spec, x, &t).unwrap();
        prop_assert!(f(&Hermitian::zeros(n)).frobenius() < 1e-10);
        prop_assert!((&*f(&Hermitian::identity(n)) - &CMatrix::identity(n)).frobenius() < 1e-10);
    }

    #[test]
    fn divided_difference_is_symmetric(x in 0.01f64..10.0, y in 0.01f64..10.0) {
        let f = ScalarFunction::sqrt();
        let (a, b) = (divided_difference(&f, x, y).unwrap(), divided_difference(&f, y, x).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        prop_assert!(a > 0.0);
    }

    #[test]
    fn pick_maps_into_half_plane((seed, n) in seed_dim(4), c in -3.0f64..3.0, d in 0.0f64..2.0, y in 1.0f64..5.0, w in 0.1f64..2.0) {
        let mut rng = Sampler::new(seed);
        let rep = PickRepresentation::new(c, d, vec![(y, w), (-y, w)], -1.0, 1.0).unwrap();
        let z = rng.half_plane(n);
        let t = tol();
        let (inside, margin) = in_half_plane(&rep.half_plane(&z, &t).unwrap(), &t).unwrap();
        prop_assert!(inside && margin > 0.0);
    }
}
