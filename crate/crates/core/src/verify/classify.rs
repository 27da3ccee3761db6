use super::{
    clearly_incomparable, dim, draw, embedding_pair_agrees, order_violation, rel_diff, run_trials, SuiteConfig,
    SuiteOutcome,
};
use crate::classify::{
    class_count as count_classes, corner_embedding, effect_automorphism, embed_2nm, fpq_automorphism, fpq_factors,
    in_ump, phi_mp, rank_witness as witness_direction, ray_stays, BlockMapSpec, EffectAutoSpec, Endpoint, FpqSpec,
    Pomjan2Map,
};
use crate::linalg::{loewner_compare, sqrt_psd, CMatrix, Hermitian, Inertia};
use crate::sample::Sampler;
use crate::Result;

/// X ∈ U(m, p): leading corner with p eigenvalues in [0.3, 2] and m − p in [−2, −0.3].
fn sample_ump(rng: &mut Sampler, spec: &BlockMapSpec) -> Hermitian {
    let mut x = rng.hermitian(spec.n).into_matrix();
    if spec.m > 0 {
        let vals: Vec<f64> = (0..spec.m)
            .map(|i| {
                let mag = rng.uniform(0.3, 2.0);
                if i < spec.p {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        x.set_block(0, 0, rng.with_spectrum(&vals).as_matrix());
    }
    Hermitian::hermitian_part(&x)
}

fn segment_in_ump(spec: &BlockMapSpec, x: &Hermitian, y: &Hermitian, cfg: &SuiteConfig) -> Result<bool> {
    for g in 0..=64 {
        if !in_ump(spec, &x.lerp(y, g as f64 / 64.0), &cfg.tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn block(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("block-3by3", cfg, cfg.trials, |rng, rec| {
        for n in 1..=5 {
            for spec in BlockMapSpec::all(n) {
                let x = sample_ump(rng, &spec);
                let lhs = embed_2nm(spec.m, &x)?.inverse()?.negated();
                let rhs = corner_embedding(spec.m, &phi_mp(&spec, &x, &cfg.tol)?)?;
                rec.residual("identity", rel_diff(&lhs, &rhs), 1e-9, &[("X", &x)]);
                let got = embed_2nm(spec.m, &x)?.inertia(&cfg.tol);
                let want = Inertia::new(n + spec.p - spec.m, 0, n - spec.p);
                rec.expect(
                    "inertia",
                    got == want,
                    || format!("(n, m, p) = ({n}, {}, {}): {got:?}, expected {want:?}", spec.m, spec.p),
                    &[("X", &x)],
                );
            }
        }
        Ok(())
    })
}

pub(super) fn phi_mp_inverse(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("phi-mp-inverse", cfg, cfg.trials, |rng, rec| {
        for n in 1..=5 {
            for spec in BlockMapSpec::all(n) {
                let x = sample_ump(rng, &spec);
                let y = phi_mp(&spec, &x, &cfg.tol)?;
                let back = phi_mp(&spec.inverse(), &y, &cfg.tol)?;
                rec.residual("round-trip", rel_diff(&back, &x), 1e-9, &[("X", &x)]);
            }
        }
        Ok(())
    })
}

pub(super) fn phi_mp_order(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("phi-mp-order", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 1, 5);
        let all = BlockMapSpec::all(n);
        let spec = all[rng.index(all.len())];
        let kind = rng.index(3);
        let (x, y) = draw(rng, 200, |r| {
            let x = sample_ump(r, &spec);
            let step = match kind {
                0 => r.pd(n, 0.05, 1.0),
                1 => {
                    let k = 1 + r.index(n);
                    r.psd(n, k)
                }
                _ => r.hermitian(n),
            };
            let y = x.plus(&step.scaled(r.uniform(0.05, 0.5)));
            (in_ump(&spec, &y, &cfg.tol).ok()? && segment_in_ump(&spec, &x, &y, cfg).ok()?).then_some((x, y))
        })?;
        let w = [("X", &*x), ("Y", &*y)];
        let (fx, fy) = (phi_mp(&spec, &x, &cfg.tol)?, phi_mp(&spec, &y, &cfg.tol)?);
        let rel = loewner_compare(&x, &y, &cfg.tol)?;
        if rel.is_leq() {
            rec.residual("order", order_violation(&fx, &fy), 1e-8, &w);
        } else if clearly_incomparable(&x, &y, 1e-3) && segment_in_ump(&spec.inverse(), &fx, &fy, cfg)? {
            let img = loewner_compare(&fx, &fy, &cfg.tol)?;
            rec.expect("incomparable", !img.is_leq() && !img.is_geq(), || format!("images are {img:?}"), &w);
        }
        Ok(())
    })
}

const EXPECTED_COUNTS: [(usize, usize); 5] = [(2, 6), (3, 10), (4, 15), (5, 21), (6, 28)];

pub(super) fn class_count(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("class-count", cfg, 1, |_, rec| {
        for (n, want) in EXPECTED_COUNTS {
            let got = count_classes(n, &cfg.tol);
            rec.expect("count", got == want, || format!("n = {n}: {got} classes, expected {want}"), &[]);
            let formula = (n + 2) * (n + 1) / 2;
            rec.expect("formula", got == formula, || format!("n = {n}: {got} vs (n+2)(n+1)/2 = {formula}"), &[]);
            let specs = BlockMapSpec::all(n).len();
            rec.expect("specs", specs == got, || format!("n = {n}: {specs} block specs vs {got} classes"), &[]);
        }
        Ok(())
    })
}

pub(super) fn rank_witness(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("rank-witness", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        for n in 1..=4 {
            let specs = BlockMapSpec::all(n);
            let mut seen: Vec<(usize, usize)> = Vec::new();
            for spec in &specs {
                let (k, l) = spec.rank_invariants();
                rec.expect("distinct", !seen.contains(&(k, l)), || format!("{spec:?} repeats invariants ({k}, {l})"), &[]);
                seen.push((k, l));

                let x = sample_ump(rng, spec);
                for (upward, rank) in [(true, k), (false, l)] {
                    let y = witness_direction(spec, &x, upward, tol)?;
                    let got = y.inertia(tol).pos;
                    rec.expect("witness-rank", got == rank, || format!("{spec:?}: rank {got}, expected {rank}"), &[("X", &x)]);
                    let stays = ray_stays(spec, &x, &y, upward, tol)?;
                    rec.expect("witness-ray", stays, || format!("{spec:?}: witness ray leaves U(m, p)"), &[("X", &x), ("Y", &y)]);
                    if n <= 3 && rank < n {
                        let z = rng.psd(n, rank + 1);
                        let stays = ray_stays(spec, &x, &z, upward, tol)?;
                        rec.expect(
                            "maximal",
                            !stays,
                            || format!("{spec:?}: a rank-{} ray stays in U(m, p)", rank + 1),
                            &[("X", &x), ("Y", &z)],
                        );
                    }
                }
            }
        }
        Ok(())
    })
}

/// X ≤ Y, both effects: Y effect, X = Y^{1/2}·C·Y^{1/2} with C an effect.
fn ordered_effects(rng: &mut Sampler, n: usize, cfg: &SuiteConfig) -> Result<(Hermitian, Hermitian)> {
    let y = rng.effect(n);
    let x = rng.effect(n).congruence(sqrt_psd(&y, &cfg.tol)?.as_matrix());
    Ok((x, y))
}

fn effect_checks(
    rec: &mut super::Rec,
    rng: &mut Sampler,
    n: usize,
    cfg: &SuiteConfig,
    phi: impl Fn(&Hermitian) -> Result<Hermitian>,
    t: &CMatrix,
) -> Result<()> {
    let w = [("T", t)];
    let zero = phi(&Hermitian::zeros(n))?;
    let one = phi(&Hermitian::identity(n))?;
    rec.residual("fix-0", zero.frobenius(), 1e-10, &w);
    rec.residual("fix-I", (&*one - &CMatrix::identity(n)).frobenius(), 1e-10, &w);

    let e = rng.effect(n);
    let fe = phi(&e)?;
    let ev = fe.eigen().values;
    let spill = (-ev[0]).max(ev[n - 1] - 1.0).max(0.0);
    rec.residual("into-effects", spill, 1e-8, &[("T", t), ("X", &e)]);

    let (x, y) = ordered_effects(rng, n, cfg)?;
    let (fx, fy) = (phi(&x)?, phi(&y)?);
    rec.residual("order", order_violation(&fx, &fy), 1e-8, &[("T", t), ("X", &x), ("Y", &y)]);

    let (x, y) = (rng.effect(n), rng.effect(n));
    if clearly_incomparable(&x, &y, 1e-2) {
        let ok = embedding_pair_agrees(&phi, &x, &y, &cfg.tol)?;
        rec.expect("reflect", ok, || "incomparable effects have comparable images".into(), &[("T", t), ("X", &x), ("Y", &y)]);
    }
    Ok(())
}

pub(super) fn effect(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("effect-auto", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let spec = EffectAutoSpec::new(rng.invertible(n, 0.3, 2.5), rng.coin(), &cfg.tol)?;
        effect_checks(rec, rng, n, cfg, |x| effect_automorphism(&spec, x, &cfg.tol), &spec.t)
    })
}

pub(super) fn fpq(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("fpq-auto", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let (p, q) = (rng.uniform(0.05, 0.95), rng.uniform(-3.0, -0.05));
        let spec = FpqSpec::new(p, q, rng.invertible(n, 0.3, 1.0), rng.coin(), &cfg.tol)?;
        effect_checks(rec, rng, n, cfg, |x| fpq_automorphism(&spec, x, &cfg.tol), &spec.t)?;
        let x = rng.effect(n);
        let direct = fpq_automorphism(&spec, &x, &cfg.tol)?;
        let [_, _, _, last] = fpq_factors(&spec, &x, &cfg.tol)?;
        rec.residual("four-factor", rel_diff(&last, &direct), 1e-9, &[("T", &spec.t), ("X", &x)]);
        Ok(())
    })
}

/// Pairs that exercise the endpoints as well as the interior.
fn harness_pairs(rng: &mut Sampler, n: usize, cfg: &SuiteConfig) -> Result<Vec<(Hermitian, Hermitian)>> {
    let (zero, one) = (Hermitian::zeros(n), Hermitian::identity(n));
    let e = rng.effect(n);
    let mut pairs = vec![
        (e.clone(), one.clone()),
        (one.clone(), e.clone()),
        (zero.clone(), e.clone()),
        (e, zero.clone()),
        (zero, one),
        ordered_effects(rng, n, cfg)?,
    ];
    let (x, y) = (rng.effect(n), rng.effect(n));
    if clearly_incomparable(&x, &y, 1e-2) {
        pairs.push((x, y));
    }
    Ok(pairs)
}

pub(super) fn pomjan2(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("pomjan2", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 5);
        if rng.coin() {
            // identity with φ(I) = 2I
            let map = Pomjan2Map::new(
                CMatrix::identity(n),
                Hermitian::zeros(n),
                Hermitian::zeros(n),
                false,
                None,
                Some(Hermitian::scalar(n, 2.0)),
                tol,
            )?;
            for (x, y) in harness_pairs(rng, n, cfg)? {
                let ok = embedding_pair_agrees(|h| map.apply(h, tol), &x, &y, tol)?;
                rec.expect("fixture-embedding", ok, || "order relation changed".into(), &[("X", &x), ("Y", &y)]);
            }
            let cont = map.is_continuous_at(Endpoint::One, tol)?;
            rec.expect("fixture-discontinuous", !cont, || "jump at I not detected".into(), &[]);
            let cont = map.is_continuous_at(Endpoint::Zero, tol)?;
            rec.expect("fixture-continuous-at-0", cont, || "spurious jump at 0".into(), &[]);
            return Ok(());
        }
        let t = rng.invertible(n, 0.5, 2.0);
        let vals: Vec<f64> = (0..n).map(|_| rng.uniform(-0.9, 2.0)).collect();
        let a = rng.with_spectrum(&vals);
        let b = rng.hermitian(n);
        let (r0, r1) = (1 + rng.index(n), 1 + rng.index(n));
        let at_zero = rng.coin().then(|| b.minus(&rng.psd(n, r0)));
        let top = a.shifted(1.0).inverse()?.congruence(&t).plus(&b);
        let at_one = rng.coin().then(|| top.plus(&rng.psd(n, r1)));
        let jumps = (at_zero.is_some(), at_one.is_some());
        let map = Pomjan2Map::new(t.clone(), a.clone(), b, rng.coin(), at_zero, at_one, tol)?;
        for (x, y) in harness_pairs(rng, n, cfg)? {
            let ok = embedding_pair_agrees(|h| map.apply(h, tol), &x, &y, tol)?;
            rec.expect("embedding", ok, || "order relation changed".into(), &[("T", &t), ("A", &a), ("X", &x), ("Y", &y)]);
        }
        for (endpoint, jump) in [(Endpoint::Zero, jumps.0), (Endpoint::One, jumps.1)] {
            let cont = map.is_continuous_at(endpoint, tol)?;
            rec.expect("continuity-flag", cont != jump, || format!("{endpoint:?}: continuous = {cont}"), &[("T", &t), ("A", &a)]);
        }
        Ok(())
    })
}
