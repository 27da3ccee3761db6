use super::{dim, rel_diff, run_trials, SuiteConfig, SuiteOutcome};
use crate::halfplane::in_half_plane;
use crate::linalg::{spectral_apply, Domain, Hermitian};
use crate::monotone::{
    is_matrix_monotone, loewner_matrix, pair_from_nodes, pair_preserved, sample_ordered_pair, MonotoneWitness,
    PickRepresentation, ScalarFunction,
};
use crate::par::Exec;

/// One verdict per (function, order); the configured trial count is the number of node tuples.
pub(super) fn loewner(cfg: &SuiteConfig) -> SuiteOutcome {
    let mut cases: Vec<(ScalarFunction, usize, bool)> = Vec::new();
    for n in 2..=6 {
        cases.push((ScalarFunction::sqrt(), n, true));
    }
    for p in [0.25, 0.5, 0.75] {
        for n in 2..=6 {
            cases.push((ScalarFunction::f_p(p).expect("p in (0, 1)"), n, true));
        }
    }
    cases.push((ScalarFunction::square(), 2, false));
    let tuples = cfg.trials.max(2);
    // trials inside each verdict already run through the configured executor
    let inner = SuiteConfig { exec: Exec::Sequential, ..cfg.clone() };
    run_trials("loewner-matrix", &inner, cases.len(), |_, rec| {
        // the case index is recovered from the trial's position
        let idx = rec.trial as usize;
        let (f, n, expect_pass) = &cases[idx];
        let v = is_matrix_monotone(f, *n, tuples, cfg.seed.wrapping_add(idx as u64), cfg.exec, &cfg.tol)?;
        let label = format!("{} at n = {n}", f.name);
        rec.expect("verdict", v.pass == *expect_pass, || format!("{label}: pass = {}, min rel eig {:.3e}", v.pass, v.min_relative_eigenvalue), &[]);
        if *expect_pass {
            rec.residual("min-eigenvalue", (-v.min_relative_eigenvalue).max(0.0), 1e-10, &[]);
            rec.expect("consistency", v.loewner_pass && v.pairs_pass, || format!("{label}: Loewner {} vs pairs {}", v.loewner_pass, v.pairs_pass), &[]);
        } else {
            match &v.witness {
                Some(MonotoneWitness::Nodes { nodes, .. }) => {
                    rec.expect("witness-size", nodes.len() == *n, || format!("{label}: {} nodes", nodes.len()), &[]);
                    let report = loewner_matrix(f, nodes)?;
                    let confirmed = pair_from_nodes(f, &report, &cfg.tol)?;
                    rec.expect("consistency", confirmed.is_some(), || format!("{label}: node witness not confirmed by a matrix pair"), &[]);
                    if let Some((x, y)) = confirmed {
                        rec.note(format!("{label}: nodes {nodes:?} give X ≤ Y with f(X) ≰ f(Y), Y − X = {:?}", y.minus(&x).eigen().values));
                    }
                }
                Some(MonotoneWitness::Pair { x, y }) => {
                    let broken = !pair_preserved(f, x, y, &cfg.tol)?;
                    rec.expect("consistency", broken, || format!("{label}: pair witness does not reproduce"), &[("X", x), ("Y", y)]);
                }
                None => rec.expect("consistency", false, || format!("{label}: failure without a witness"), &[]),
            }
        }
        Ok(())
    })
}

fn random_pick(rng: &mut crate::sample::Sampler) -> crate::Result<PickRepresentation> {
    let atoms = (0..1 + rng.index(3))
        .map(|_| {
            let y = 1.0 + 2.0 * rng.normal().abs();
            let y = if rng.coin() { y } else { -y };
            (y, rng.uniform(0.1, 2.0))
        })
        .collect();
    let d = if rng.coin() { 0.0 } else { rng.uniform(0.0, 2.0) };
    PickRepresentation::new(rng.normal(), d, atoms, -1.0, 1.0)
}

pub(super) fn pick(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("pick", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let rep = random_pick(rng)?;

        let z = rng.half_plane(n);
        let w = rep.half_plane(&z, tol)?;
        let (inside, margin) = in_half_plane(&w, tol)?;
        rec.expect("half-plane", inside && margin > 0.0, || format!("margin {margin:.3e}"), &[("Z", &z)]);

        let vals: Vec<f64> = (0..n).map(|_| rng.uniform(-0.99, 0.99)).collect();
        let x = rng.with_spectrum(&vals);
        let direct = rep.hermitian(&x, tol)?;
        let scalar = rep.clone();
        let spectral = spectral_apply(&x, move |l| scalar.scalar(l).unwrap_or(f64::NAN), &Domain::Open { lo: -1.0, hi: 1.0 }, tol)?;
        rec.residual("spectral", rel_diff(&direct, &spectral), 1e-9, &[("X", &x)]);

        let f = ScalarFunction::from_pick(rep.clone());
        let (x, y) = sample_ordered_pair(&f, n, rng);
        let kept = pair_preserved(&f, &x, &y, tol)?;
        rec.expect("monotone-pair", kept, || "Pick function broke an ordered pair".into(), &[("X", &x), ("Y", &y)]);

        let single = PickRepresentation::new(0.0, 0.0, vec![(0.0, 1.0)], 0.0, f64::INFINITY)?;
        let x = rng.pd(n, 0.2, 3.0);
        let got = single.hermitian(&x, tol)?;
        let want: Hermitian = x.inverse()?.negated();
        rec.residual("single-atom", (&*got - &*want).frobenius() / (1.0 + want.frobenius()), 1e-10, &[("X", &x)]);
        Ok(())
    })
}
