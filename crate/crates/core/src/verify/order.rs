use super::{clearly_incomparable, dim, rel_diff, run_trials, SuiteConfig, SuiteOutcome};
use crate::linalg::{loewner_compare, pinv_psd, spectral_norm, CMatrix, Hermitian};
use crate::order::{affine_interval_iso, bloch_projection, coron_threshold, rank_one_leq};

pub(super) fn rank_one(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("rank-one-order", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let v = rng.psd(n, 1);
        let v = v.scaled(1.0 / v.spectral_norm());
        let r = v.scaled(rng.uniform(0.2, 3.0));
        let a = match rng.index(3) {
            0 => rng.pd(n, 0.1, 3.0),
            1 => {
                let k = 1 + rng.index(n - 1);
                rng.psd(n, k)
            }
            _ => {
                // rank-deficient with v in the range
                let k = rng.index(n - 1);
                rng.psd(n, k).plus(&v.scaled(rng.uniform(0.2, 3.0)))
            }
        };
        // stay clear of the boundary tr(A†R) = 1
        let t = (pinv_psd(&a, &cfg.tol)?.as_matrix() * r.as_matrix()).trace().re;
        if (t - 1.0).abs() < 1e-3 {
            return Ok(());
        }
        let fast = rank_one_leq(&r, &a, &cfg.tol)?;
        let slow = loewner_compare(&r, &a, &cfg.tol)?.is_leq();
        rec.expect("agreement", fast == slow, || format!("trace test {fast}, Loewner {slow}"), &[("R", &r), ("A", &a)]);
        Ok(())
    })
}

pub(super) fn interval_iso(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("interval-iso", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let rank = 1 + rng.index(n);
        let mut vals = vec![0.0; n];
        for v in vals.iter_mut().take(rank) {
            *v = rng.uniform(0.1, 3.0);
        }
        let u = rng.unitary(n);
        let p = Hermitian::diag(&vals).congruence(&u);
        let b = a.plus(&p);
        let iso = affine_interval_iso(&a, &b, &cfg.tol)?;
        rec.expect("rank", iso.rank() == rank, || format!("rank {} for planted {rank}", iso.rank()), &[("A", &a), ("B", &b)]);
        let r = iso.rank();
        // exact square root: sqrt_psd would leak ~1e−8 into the kernel
        let roots: Vec<f64> = vals.iter().map(|v| v.sqrt()).collect();
        let root = Hermitian::diag(&roots).congruence(&u);
        let inside = |c: &Hermitian| a.plus(&c.congruence(&root));

        let x = inside(&rng.effect(n));
        let fx = iso.forward(&x, &cfg.tol)?;
        let back = iso.backward(&fx, &cfg.tol)?;
        rec.residual("round-trip", rel_diff(&back, &x), 1e-9, &[("A", &a), ("B", &b), ("X", &x)]);
        let lo = iso.forward(&a, &cfg.tol)?;
        let hi = iso.forward(&b, &cfg.tol)?;
        let ends = lo.frobenius().max((&*hi - &CMatrix::identity(r)).frobenius());
        rec.residual("endpoints", ends, 1e-9, &[("A", &a), ("B", &b)]);

        // X ≤ Y inside [A, B]
        let hi_c = rng.effect(n);
        let lo_c = rng.effect(n).congruence(crate::linalg::sqrt_psd(&hi_c, &cfg.tol)?.as_matrix());
        let (x, y) = (inside(&lo_c), inside(&hi_c));
        let ordered = loewner_compare(&iso.forward(&x, &cfg.tol)?, &iso.forward(&y, &cfg.tol)?, &cfg.tol)?.is_leq();
        rec.expect("order", ordered, || "ordered pair lost its order".into(), &[("A", &a), ("B", &b), ("X", &x), ("Y", &y)]);

        let (c1, c2) = (rng.effect(n), rng.effect(n));
        let (x, y) = (inside(&c1), inside(&c2));
        let (fx, fy) = (iso.forward(&x, &cfg.tol)?, iso.forward(&y, &cfg.tol)?);
        if clearly_incomparable(&fx, &fy, 0.05) {
            let rel = loewner_compare(&x, &y, &cfg.tol)?;
            rec.expect(
                "incomparable",
                !rel.is_leq() && !rel.is_geq(),
                || format!("images incomparable but preimages {rel:?}"),
                &[("A", &a), ("B", &b), ("X", &x), ("Y", &y)],
            );
        }
        Ok(())
    })
}

pub(super) fn bloch(cfg: &SuiteConfig) -> SuiteOutcome {
    let p = Hermitian::diag(&[1.0, 0.0]);
    run_trials("bloch-bound", cfg, cfg.trials, move |rng, rec| {
        let c = rng.uniform(0.0, 0.95);
        let d = rng.uniform(c + 0.01, 1.0);
        let thr = coron_threshold(c, d)?;
        let rhs = Hermitian::diag(&[1.0, c]);
        for _ in 0..200 {
            let (x, y, z) = (rng.normal(), rng.normal(), rng.normal());
            let s = 0.5 / (x * x + y * y + z * z).sqrt();
            let e = bloch_projection([x * s, y * s, z * s]);
            let dist = spectral_norm(&(&*p - &*e))?;
            if (dist - thr).abs() < 1e-6 {
                continue;
            }
            let holds = loewner_compare(&e.scaled(d), &rhs, &cfg.tol)?.is_leq();
            rec.expect(
                "threshold",
                holds == (dist <= thr),
                || format!("c = {c}, d = {d}: ‖P − E‖ = {dist:.6}, threshold {thr:.6}, dE ≤ P + cQ is {holds}"),
                &[("E", &e)],
            );
        }
        Ok(())
    })
}
