use super::{dim, draw, rel_diff, run_trials, SuiteConfig, SuiteOutcome};
use crate::halfplane::{
    cayley, f_r_hermitian, f_r_map, f_r_pole, f_r_scalar, fit_canonical, in_half_plane, inverse_cayley, neg_inverse,
    FitOptions, MobiusAutomorphism,
};
use crate::linalg::CMatrix;
use crate::sample::Sampler;

const RATES: [f64; 4] = [-2.0, -0.5, 0.3, 0.9];

pub(super) fn primitives(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("halfplane-primitives", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 1, 6);
        let y = rng.contraction(n, 0.9);
        let z = cayley(&y, tol)?;
        rec.expect("cayley-lands", in_half_plane(&z, tol)?.0, || "Cayley image left Π_n".into(), &[("Y", &y)]);
        rec.residual("cayley-round-trip", (&inverse_cayley(&z, tol)? - &y).frobenius(), 1e-10, &[("Y", &y)]);

        let z = rng.half_plane(n);
        let w = neg_inverse(&z, tol)?;
        rec.expect("neg-inverse-lands", in_half_plane(&w, tol)?.0, || "−Z⁻¹ left Π_n".into(), &[("Z", &z)]);
        rec.residual("neg-inverse-involution", rel_diff(&neg_inverse(&w, tol)?, &z), 1e-10, &[("Z", &z)]);

        for r in RATES {
            let s = r / (r - 1.0);
            let x = loop {
                let x = rng.uniform(-3.0, 3.0);
                if (x - f_r_pole(r)).abs() > 0.1 && (f_r_scalar(r, x) - f_r_pole(s)).abs() > 0.1 {
                    break x;
                }
            };
            let back = f_r_scalar(s, f_r_scalar(r, x));
            rec.residual("f_r-scalar", (back - x).abs() / (1.0 + x.abs()), 1e-9, &[]);

            let e = rng.effect(n);
            let back = f_r_hermitian(s, &f_r_hermitian(r, &e, tol)?, tol)?;
            rec.residual("f_r-hermitian", rel_diff(&back, &e), 1e-9, &[("X", &e)]);

            let z = rng.half_plane(n);
            let fz = f_r_map(r, &z, tol)?;
            rec.expect("f_r-lands", in_half_plane(&fz, tol)?.0, || format!("f_{r}(Z) left Π_n"), &[("Z", &z)]);
            rec.residual("f_r-half-plane", rel_diff(&f_r_map(s, &fz, tol)?, &z), 1e-9, &[("Z", &z)]);
        }
        Ok(())
    })
}

fn random_automorphism(rng: &mut Sampler, n: usize, general: bool, cfg: &SuiteConfig) -> crate::Result<MobiusAutomorphism> {
    let t = rng.invertible(n, 0.5, 2.0);
    let a = rng.hermitian(n);
    let transpose = rng.coin();
    if general {
        let (b, c) = (rng.hermitian(n), rng.hermitian(n));
        MobiusAutomorphism::new(t, a, b, c, transpose, &cfg.tol)
    } else {
        MobiusAutomorphism::canonical(t, a, transpose, &cfg.tol)
    }
}

pub(super) fn membership(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("mobius-membership", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 1, 6);
        let m = random_automorphism(rng, n, true, cfg)?;
        let z = rng.half_plane(n);
        match m.apply(&z, &cfg.tol) {
            Ok(w) => {
                let (inside, margin) = in_half_plane(&w, &cfg.tol)?;
                rec.expect("half-plane", inside && margin > 0.0, || format!("margin {margin:.3e}"), &[("Z", &z)]);
            }
            Err(e) if e.is_domain() => {}
            Err(e) => return Err(e),
        }
        let x = rng.hermitian(n);
        if let Ok(w) = m.apply(x.as_matrix(), &cfg.tol) {
            let defect = (&w - &w.adjoint()).frobenius() / (1.0 + w.frobenius());
            rec.residual("hermitian", defect, 1e-9, &[("X", &x)]);
        }
        Ok(())
    })
}

fn parameter_error(got: &MobiusAutomorphism, want: &MobiusAutomorphism) -> (f64, f64) {
    let a = rel_diff(&got.a, &want.a);
    let t = rel_diff(&got.t.normalize_phase(), &want.t.normalize_phase());
    (a, t)
}

pub(super) fn fit(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("mobius-fit", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 1, 5);
        let planted = random_automorphism(rng, n, false, cfg)?;
        let opts = FitOptions { seed: rng.index(1 << 30) as u64, ..FitOptions::default() };
        let got = fit_canonical(n, |z| planted.apply(z, &cfg.tol), &opts, &cfg.tol)?;
        let w = [("T", &planted.t), ("A", &*planted.a)];
        rec.expect(
            "transpose",
            n == 1 || got.transpose == planted.transpose,
            || format!("recovered transpose = {}", got.transpose),
            &w,
        );
        let (ea, et) = parameter_error(&got, &planted);
        rec.residual("A", ea, 1e-7, &w);
        rec.residual("T", et, 1e-7, &w);
        rec.residual("offsets", got.b.frobenius().max(got.c.frobenius()), 1e-7, &w);
        Ok(())
    })
}

pub(super) fn group(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("mobius-group", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 1, 4);
        let (m1, m2) = (random_automorphism(rng, n, true, cfg)?, random_automorphism(rng, n, true, cfg)?);
        let compose = |z: &CMatrix| m2.apply(&m1.apply(z, &cfg.tol)?, &cfg.tol);
        let anchor = draw(rng, 50, |r| {
            let x = r.hermitian(n);
            compose(x.as_matrix()).ok().filter(|v| v.is_finite()).map(|_| x)
        })?;
        let opts = FitOptions { anchor: Some(anchor.clone()), seed: rng.index(1 << 30) as u64, rel_tol: 1e-6, ..FitOptions::default() };
        let fitted = fit_canonical(n, compose, &opts, &cfg.tol);
        let witness: [(&str, &CMatrix); 3] = [("T1", &m1.t), ("T2", &m2.t), ("anchor", &anchor)];
        match fitted {
            Ok(m) => {
                let mut worst = 0.0f64;
                for _ in 0..20 {
                    let z = rng.half_plane(n);
                    if let (Ok(want), Ok(got)) = (compose(&z), m.apply(&z, &cfg.tol)) {
                        worst = worst.max(rel_diff(&got, &want));
                    }
                }
                rec.residual("refit", worst, 1e-6, &witness);
            }
            Err(e) => rec.expect("refit", false, || e.to_string(), &witness),
        }
        Ok(())
    })
}
