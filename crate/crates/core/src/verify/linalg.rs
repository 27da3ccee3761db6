use super::{dim, draw, run_trials, SuiteConfig, SuiteOutcome};
use crate::linalg::{
    loewner_compare, singular_extremes, spectral_apply, sqrt_psd, CMatrix, Domain, Hermitian, LoewnerOrder, C64,
};

pub(super) fn eigen(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("eigen", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 16);
        let x = rng.hermitian(n);
        let e = x.eigen();
        let scale = x.frobenius().max(1e-300);
        let vl = CMatrix::from_fn(n, n, |i, j| e.vectors[(i, j)] * e.values[j]);
        let res = (&(x.as_matrix() * &e.vectors) - &vl).frobenius() / scale;
        rec.residual("residual", res, cfg.tol.eig_tol, &[("X", &x)]);
        let gram = &e.vectors.adjoint() * &e.vectors;
        rec.residual("unitarity", (&gram - &CMatrix::identity(n)).frobenius(), cfg.tol.eig_tol, &[("X", &x)]);
        rec.expect("ascending", e.values.windows(2).all(|w| w[0] <= w[1]), || format!("{:?}", e.values), &[("X", &x)]);

        // closed forms in small dimension
        let x2 = rng.hermitian(2);
        let (a, b, d) = (x2[(0, 0)].re, x2[(0, 1)], x2[(1, 1)].re);
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt();
        let v = x2.eigen().values;
        let err = (v[0] - (mid - rad)).abs().max((v[1] - (mid + rad)).abs()) / (1.0 + x2.spectral_norm());
        rec.residual("closed-form-2x2", err, cfg.tol.eig_tol, &[("X", &x2)]);

        let x3 = rng.hermitian(3);
        let s3 = 1.0 + x3.spectral_norm();
        let worst = x3
            .eigen()
            .values
            .iter()
            .map(|&l| x3.as_matrix().add_scalar_diag(C64::new(-l, 0.0)).det().norm() / s3.powi(3))
            .fold(0.0, f64::max);
        rec.residual("characteristic-3x3", worst, 1e-9, &[("X", &x3)]);
        Ok(())
    })
}

pub(super) fn sylvester(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("sylvester", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let vals: Vec<f64> = (0..n)
            .map(|_| {
                let k = rng.index(3);
                let mag = rng.uniform(0.1, 3.0);
                [mag, -mag, 0.0][k]
            })
            .collect();
        let x = rng.with_spectrum(&vals);
        let t = rng.invertible(n, 0.3, 3.0);
        let before = x.inertia(&cfg.tol);
        let after = x.congruence(&t).inertia(&cfg.tol);
        rec.expect("inertia", before == after, || format!("{before:?} became {after:?}"), &[("X", &x), ("T", &t)]);
        let expected = (
            vals.iter().filter(|&&v| v > 0.0).count(),
            vals.iter().filter(|&&v| v == 0.0).count(),
            vals.iter().filter(|&&v| v < 0.0).count(),
        );
        rec.expect(
            "planted-inertia",
            (before.pos, before.zero, before.neg) == expected,
            || format!("{before:?} vs planted {expected:?}"),
            &[("X", &x)],
        );
        Ok(())
    })
}

fn mirrored(o: LoewnerOrder) -> LoewnerOrder {
    match o {
        LoewnerOrder::Less => LoewnerOrder::Greater,
        LoewnerOrder::LessEq => LoewnerOrder::GreaterEq,
        LoewnerOrder::Greater => LoewnerOrder::Less,
        LoewnerOrder::GreaterEq => LoewnerOrder::LessEq,
        other => other,
    }
}

pub(super) fn negation(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("loewner-negation", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let x = rng.hermitian(n);
        let y = match rng.index(4) {
            0 => x.plus(&rng.pd(n, 0.1, 2.0)),
            1 => {
                let r = 1 + rng.index(n);
                x.plus(&rng.psd(n, r))
            }
            2 => x.clone(),
            _ => rng.hermitian(n),
        };
        let fwd = loewner_compare(&x, &y, &cfg.tol)?;
        let neg = loewner_compare(&y.negated(), &x.negated(), &cfg.tol)?;
        rec.expect("negation", fwd == neg, || format!("{fwd:?} vs {neg:?}"), &[("X", &x), ("Y", &y)]);
        let rev = loewner_compare(&y, &x, &cfg.tol)?;
        rec.expect("swap", rev == mirrored(fwd), || format!("{fwd:?} vs swapped {rev:?}"), &[("X", &x), ("Y", &y)]);
        Ok(())
    })
}

pub(super) fn composition(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("spectral-composition", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let x = rng.hermitian(n);
        let g = spectral_apply(&x, |l| l * l + 1.0, &Domain::Real, &cfg.tol)?;
        let fg = spectral_apply(&x, |l| (l * l + 1.0).sqrt(), &Domain::Real, &cfg.tol)?;
        let f_of_g = spectral_apply(&g, f64::sqrt, &Domain::Open { lo: 0.0, hi: f64::INFINITY }, &cfg.tol)?;
        rec.residual("composition", super::rel_diff(&f_of_g, &fg), 1e-9, &[("X", &x)]);

        let rank = 1 + rng.index(n);
        let p = rng.psd(n, rank);
        let r = sqrt_psd(&p, &cfg.tol)?;
        let sq = r.as_matrix() * r.as_matrix();
        rec.residual("sqrt-square", super::rel_diff(&sq, &p), 1e-9, &[("P", &p)]);
        rec.expect("sqrt-psd", r.min_eigenvalue() >= -1e-12 * (1.0 + r.spectral_norm()), || "negative root".into(), &[("P", &p)]);
        Ok(())
    })
}

pub(super) fn margin(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("invertibility-margin", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let x = draw(rng, 1, |r| Some(r.invertible(n, 0.1, 3.0)))?;
        let (lo, hi) = singular_extremes(&x)?;
        let gram = Hermitian::hermitian_part(&(&x.adjoint() * &x)).eigen().values;
        let lo_ref = gram[0].max(0.0).sqrt();
        let hi_ref = gram[n - 1].sqrt();
        let err = (lo - lo_ref).abs().max((hi - hi_ref).abs()) / (1.0 + hi_ref);
        rec.residual("singular-extremes", err, 1e-9, &[("X", &x)]);
        Ok(())
    })
}
