//! Small worked instances, each checked against a value computed here by hand
//! or by a formula independent of the library's code path.

use ordiso::classify::{
    class_count, effect_automorphism, embed_2nm, phi_mp, BlockMapSpec, EffectAutoSpec, Endpoint, FpqSpec, Pomjan2Map,
};
use ordiso::halfplane::{f_r_scalar, fit_canonical, neg_inverse, FitOptions, MobiusAutomorphism};
use ordiso::linalg::{CMatrix, Hermitian, Tolerances, C64, I};
use ordiso::monotone::{divided_difference, loewner_matrix, PickRepresentation, ScalarFunction};
use ordiso::order::{affine_interval_iso, coron_threshold, rank_one_leq};
use ordiso::phimap::{
    identify_parameters, in_u_a, in_w_a, interval_below_criterion, phi_apply, phi_hat, segment_in_u_a,
    translated_base, LocalIsoSpec,
};
use ordiso::sample::Sampler;
use ordiso::Error;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn scalar(x: f64) -> Hermitian {
    Hermitian::diag(&[x])
}

fn close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
    (a - b).frobenius() <= eps
}

#[test]
fn scalar_component_of_zero() {
    let t = tol();
    let a = scalar(1.0);
    assert!(in_w_a(&a, &scalar(-1.0 + 1e-3), &t).unwrap());
    assert!(!in_w_a(&a, &scalar(-1.0), &t).unwrap());
    // Û_a = ℝ ∖ {−1}; the component of 0 is (−1, ∞)
    assert!(!in_u_a(&a, &scalar(-2.0), &t).unwrap());
    assert!(in_u_a(&a, &scalar(-0.5), &t).unwrap());
    let y = phi_apply(&a, &scalar(1.0), &t).unwrap();
    assert!((y[(0, 0)].re - 0.5).abs() < 1e-15);
}

#[test]
fn segment_gate_scalar_and_planar() {
    let t = tol();
    assert!(segment_in_u_a(&scalar(1.0), &scalar(-0.5), &scalar(0.5), 64, &t).unwrap());
    // det(I + XA) = 1 − s² + q² for X = [[s, q], [q, s]]: positive along each ray to an
    // endpoint, −3 at the midpoint 2I
    let a = Hermitian::diag(&[1.0, -1.0]);
    let x = Hermitian::from_real_rows(&[&[2.0, 3.0], &[3.0, 2.0]]);
    let y = Hermitian::from_real_rows(&[&[2.0, -3.0], &[-3.0, 2.0]]);
    assert!(in_u_a(&a, &x, &t).unwrap() && in_u_a(&a, &y, &t).unwrap());
    let mid = x.lerp(&y, 0.5);
    let det = (mid.as_matrix() * a.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0)).det();
    assert!((det.re + 3.0).abs() < 1e-14 && !in_u_a(&a, &mid, &t).unwrap());
    assert!(!segment_in_u_a(&a, &x, &y, 64, &t).unwrap());
}

#[test]
fn interval_criterion_scalar() {
    let t = tol();
    // x^{1/2} a x^{1/2} = −1.2 < −1 while xa + 1 = −0.2 ≠ 0
    assert!(!interval_below_criterion(&scalar(-2.0), &scalar(0.6), &t).unwrap());
    assert!(interval_below_criterion(&scalar(-2.0), &scalar(0.4), &t).unwrap());
    assert!(matches!(interval_below_criterion(&scalar(-2.0), &scalar(0.5), &t), Err(Error::Membership(_))));
    assert!(matches!(interval_below_criterion(&scalar(1.0), &scalar(-0.5), &t), Err(Error::InvalidArgument(_))));
}

#[test]
fn phi_on_diagonal() {
    let a = Hermitian::diag(&[1.0, -1.0]);
    let y = phi_apply(&a, &Hermitian::scalar(2, 0.5), &tol()).unwrap();
    assert!(close(&y, &CMatrix::diag_real(&[1.0 / 3.0, 1.0]), 1e-15));
}

#[test]
fn translation_scalar() {
    let t = tol();
    let (a, x0, x) = (scalar(1.0), scalar(1.0), scalar(0.3));
    let b = translated_base(&a, &x0, &t).unwrap();
    assert!((b[(0, 0)].re - 0.5).abs() < 1e-15);
    // (x + x₀)/((x + x₀)a + 1) against (x₀a + 1)⁻²·x/(xb + 1) + x₀/(x₀a + 1)
    let lhs: f64 = 1.3 / 2.3;
    let rhs = 0.25 * 0.3 / 1.15 + 0.5;
    assert!((lhs - rhs).abs() < 1e-15);
    let got = phi_hat(&a, &x.plus(&x0), &t).unwrap();
    assert!((got[(0, 0)].re - lhs).abs() < 1e-15);
}

#[test]
fn rank_one_against_eigenvalues() {
    let t = tol();
    let mut rng = Sampler::new(11);
    for _ in 0..200 {
        let n = 2 + rng.index(4);
        let r = rng.psd(n, 1);
        let k = 1 + rng.index(n);
        let a = rng.psd(n, k);
        let direct = a.minus(&r).min_eigenvalue() >= -1e-8 * (1.0 + a.spectral_norm());
        let margin = a.minus(&r).min_eigenvalue().abs();
        if margin > 1e-6 {
            assert_eq!(rank_one_leq(&r, &a, &t).unwrap(), direct);
        }
    }
}

#[test]
fn interval_iso_corner() {
    let t = tol();
    let iso = affine_interval_iso(&Hermitian::zeros(2), &Hermitian::diag(&[1.0, 0.0]), &t).unwrap();
    assert_eq!(iso.rank(), 1);
    let x = Hermitian::diag(&[0.3, 0.0]);
    let y = iso.forward(&x, &t).unwrap();
    assert!((y[(0, 0)].re - 0.3).abs() < 1e-15);
}

/// Brute force over the Bloch circle of real projections plus random complex ones.
#[test]
fn bloch_threshold_by_sampling() {
    let (c, d) = (0.25, 0.5);
    let thr = coron_threshold(c, d).unwrap();
    assert!((thr - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    assert!(coron_threshold(0.5, 0.5).is_err());
    let p = Hermitian::diag(&[1.0, 0.0]);
    let rhs = Hermitian::diag(&[1.0, c]);
    let mut rng = Sampler::new(3);
    let mut largest_ok = 0.0f64;
    for _ in 0..20_000 {
        let e = rng.rank_one_projection(2);
        let lhs = e.scaled(d);
        let ok = rhs.minus(&lhs).min_eigenvalue() >= -1e-12;
        let dist = p.minus(&e).spectral_norm();
        if ok {
            largest_ok = largest_ok.max(dist);
        }
    }
    assert!((largest_ok - thr).abs() < 1e-2, "sampled boundary {largest_ok} vs {thr}");
}

#[test]
fn f_half_at_half() {
    assert!((f_r_scalar(0.5, 0.5) - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn fit_of_negative_inverse() {
    let t = tol();
    let mut rng = Sampler::new(5);
    // −Z⁻¹ blows up at 0, so anchor at I
    let opts = FitOptions { anchor: Some(Hermitian::identity(2)), ..FitOptions::default() };
    let m = fit_canonical(2, |z| neg_inverse(z, &t), &opts, &t).unwrap();
    for _ in 0..10 {
        let z = rng.half_plane(2);
        assert!(close(&m.apply(&z, &t).unwrap(), &neg_inverse(&z, &t).unwrap(), 1e-8));
    }
}

#[test]
fn fit_of_theta() {
    let t = tol();
    let mut rng = Sampler::new(8);
    let a = rng.hermitian(3);
    let planted = MobiusAutomorphism::canonical(CMatrix::identity(3), a.clone(), false, &t).unwrap();
    let m = fit_canonical(3, |z| planted.apply(z, &t), &FitOptions::default(), &t).unwrap();
    assert!(close(&m.a, &a, 1e-7 * (1.0 + a.frobenius())));
    assert!(!m.transpose);
}

#[test]
fn identify_theta_and_transpose() {
    let t = tol();
    let mut rng = Sampler::new(9);
    let h = rng.hermitian(3);
    let a = h.scaled(1.0 / (1.0 + h.spectral_norm()));
    let got = identify_parameters(3, |x| phi_apply(&a, x, &t), None, &t).unwrap();
    assert!(close(&got.a, &a, 1e-5));
    assert!(close(&got.t, &CMatrix::identity(3), 1e-5));

    let t0 = rng.invertible(3, 0.5, 2.0);
    let spec = LocalIsoSpec::new(Hermitian::zeros(3), t0.clone(), true, &t).unwrap();
    let got = identify_parameters(3, |x| Ok(x.transposed().congruence(&spec.t)), None, &t).unwrap();
    assert!(got.transpose);
    assert!(close(&got.t, &t0.normalize_phase(), 1e-6));
}

#[test]
fn phi_mp_cases() {
    let t = tol();
    let x = Hermitian::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
    let got = phi_mp(&BlockMapSpec::new(2, 1, 1).unwrap(), &x, &t).unwrap();
    let want = CMatrix::from_rows(&[
        vec![C64::new(-0.5, 0.0), C64::new(0.0, 0.5)],
        vec![C64::new(0.0, -0.5), C64::new(2.5, 0.0)],
    ]);
    assert!(close(&got, &want, 1e-15));
    assert_eq!(phi_mp(&BlockMapSpec::new(2, 0, 0).unwrap(), &x, &t).unwrap(), x);
    let full = phi_mp(&BlockMapSpec::new(2, 2, 2).unwrap(), &x, &t).unwrap();
    assert!(close(&full, &x.inverse().unwrap().negated(), 1e-15));
}

#[test]
fn scalar_embedding_inertia() {
    let t = tol();
    for x in [-3.0, 0.0, 0.5, 10.0] {
        let e = embed_2nm(0, &scalar(x)).unwrap();
        assert_eq!(e[(0, 1)], I);
        let root = (x * x / 4.0 + 1.0f64).sqrt();
        let v = e.eigen().values;
        assert!((v[0] - (x / 2.0 - root)).abs() < 1e-12 && (v[1] - (x / 2.0 + root)).abs() < 1e-12);
        let inertia = e.inertia(&t);
        assert_eq!((inertia.pos, inertia.zero, inertia.neg), (1, 0, 1));
    }
}

#[test]
fn class_counts() {
    let t = tol();
    let got: Vec<usize> = (2..=6).map(|n| class_count(n, &t)).collect();
    assert_eq!(got, vec![6, 10, 15, 21, 28]);
}

#[test]
fn effect_example_by_hand() {
    let t = tol();
    // T = diag(2, 1): T*T − I = diag(3, 0); X = I/2 gives T·diag(0.5/2.5, 0.5)·T* = diag(0.8, 0.5)
    let spec = EffectAutoSpec::new(CMatrix::diag_real(&[2.0, 1.0]), false, &t).unwrap();
    let y = effect_automorphism(&spec, &Hermitian::scalar(2, 0.5), &t).unwrap();
    assert!(close(&y, &CMatrix::diag_real(&[0.8, 0.5]), 1e-15));
}

#[test]
fn fpq_near_identity() {
    let t = tol();
    let spec = FpqSpec::new(1e-6, -1e-6, CMatrix::identity(2), false, &t).unwrap();
    let x = Hermitian::from_real_rows(&[&[0.4, 0.1], &[0.1, 0.7]]);
    let y = ordiso::classify::fpq_automorphism(&spec, &x, &t).unwrap();
    assert!(close(&y, &x, 1e-5));
}

#[test]
fn pomjan2_fixture_jumps_at_identity() {
    let t = tol();
    let map = Pomjan2Map::new(
        CMatrix::identity(2),
        Hermitian::zeros(2),
        Hermitian::zeros(2),
        false,
        None,
        Some(Hermitian::scalar(2, 2.0)),
        &t,
    )
    .unwrap();
    assert!(!map.is_continuous_at(Endpoint::One, &t).unwrap());
    assert!(map.is_continuous_at(Endpoint::Zero, &t).unwrap());
    let x = Hermitian::diag(&[0.2, 0.9]);
    assert_eq!(map.apply(&x, &t).unwrap(), x);
}

#[test]
fn divided_differences_and_loewner_matrices() {
    let sqrt = ScalarFunction::sqrt();
    assert!((divided_difference(&sqrt, 1.0, 4.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    let r = loewner_matrix(&sqrt, &[1.0, 4.0]).unwrap();
    assert!((r.matrix[0][0] - 0.5).abs() < 1e-9 && (r.matrix[1][1] - 0.25).abs() < 1e-9);
    // det = 1/8 − 1/9
    let det = r.matrix[0][0] * r.matrix[1][1] - r.matrix[0][1] * r.matrix[1][0];
    assert!((det - (1.0 / 8.0 - 1.0 / 9.0)).abs() < 1e-9);
    assert!(r.min_eigenvalue > 0.0);

    let sq = loewner_matrix(&ScalarFunction::square(), &[1.0, 3.0]).unwrap();
    let det = sq.matrix[0][0] * sq.matrix[1][1] - sq.matrix[0][1] * sq.matrix[1][0];
    assert!((det + 4.0).abs() < 1e-6);
    assert!(sq.min_eigenvalue < 0.0);
}

#[test]
fn single_atom_pick_is_negative_inverse() {
    let t = tol();
    let rep = PickRepresentation::new(0.0, 0.0, vec![(0.0, 1.0)], 0.0, f64::INFINITY).unwrap();
    assert!((rep.scalar(2.0).unwrap() + 0.5).abs() < 1e-15);
    let x = Hermitian::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]);
    let got = rep.hermitian(&x, &t).unwrap();
    assert!(close(&got, &x.inverse().unwrap().negated(), 1e-12));
    assert!(rep.scalar(-1.0).is_err());
}
