use super::{dim, draw, order_violation, rel_diff, run_trials, well_conditioned, SuiteConfig, SuiteOutcome};
use crate::linalg::{loewner_compare, sqrt_psd, CMatrix, Hermitian, C64};
use crate::phimap::{
    apply_local_iso, congruence_orbit, conjugated_spec, identify_parameters, in_u_a, in_w_a, interval_below_criterion,
    phi_apply, phi_hat, search_path, segment_in_u_a, theta_apply, translated_base, LocalIsoSpec, PathSearch,
};
use crate::sample::Sampler;

/// XA + I
fn base(a: &Hermitian, x: &CMatrix) -> CMatrix {
    (x * a.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0))
}

pub(super) fn theta(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("theta-inversion", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let x = draw(rng, 100, |r| {
            let x = r.complex(n);
            well_conditioned(&base(&a, &x), 1e-2).then_some(x)
        })?;
        let scale = 1.0 + crate::linalg::spectral_norm(&x)?;
        let y = theta_apply(&a, &x, &cfg.tol)?;
        let back = theta_apply(&a.negated(), &y, &cfg.tol)?;
        rec.residual("inversion", (&back - &x).frobenius() / scale, 1e-9, &[("A", &a), ("X", &x)]);
        let right = &x * &(a.as_matrix() * &x).add_scalar_diag(C64::new(1.0, 0.0)).inverse()?;
        rec.residual("two-sided", (&y - &right).frobenius() / scale, 1e-10, &[("A", &a), ("X", &x)]);
        Ok(())
    })
}

/// Points of U_A with XA + I comfortably invertible.
fn admissible(a: &Hermitian, x: &Hermitian, cfg: &SuiteConfig) -> crate::Result<bool> {
    Ok(in_u_a(a, x, &cfg.tol)? && well_conditioned(&base(a, x), 1e-2))
}

/// A gated pair X, Y = X + step in U_A; `ordered` picks a PSD step, otherwise an indefinite one.
fn gated_pair(rng: &mut Sampler, a: &Hermitian, ordered: bool, cfg: &SuiteConfig) -> crate::Result<(Hermitian, Hermitian)> {
    let n = a.dim();
    let sigma = 1.0 / (1.0 + a.spectral_norm());
    let kind = rng.index(7);
    draw(rng, 200, |r| {
        let x = r.hermitian(n).scaled(sigma * r.uniform(0.3, 1.5));
        let step = match (ordered, kind) {
            (true, 0..=3) => r.pd(n, 0.05, 1.0),
            (true, _) => {
                let k = 1 + r.index(n - 1);
                r.psd(n, k)
            }
            (false, _) => {
                let mut vals: Vec<f64> = (0..n).map(|_| r.uniform(-1.0, 1.0)).collect();
                vals[0] = -r.uniform(0.3, 1.0);
                vals[n - 1] = r.uniform(0.3, 1.0);
                r.with_spectrum(&vals)
            }
        };
        let y = x.plus(&step.scaled(sigma * r.uniform(0.2, 1.0)));
        let ok = admissible(a, &x, cfg).ok()? && admissible(a, &y, cfg).ok()? && segment_in_u_a(a, &x, &y, 64, &cfg.tol).ok()?;
        ok.then_some((x, y))
    })
}

/// Each trial checks one ordered and one incomparable gated pair.
pub(super) fn order(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("phi-order", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let neg = a.negated();
        for ordered in [true, false] {
            let (x, y) = gated_pair(rng, &a, ordered, cfg)?;
            let w = [("A", &*a), ("X", &*x), ("Y", &*y)];
            let (fx, fy) = (phi_apply(&a, &x, tol)?, phi_apply(&a, &y, tol)?);
            let rel = loewner_compare(&x, &y, tol)?;
            if rel.is_leq() {
                rec.residual("order", order_violation(&fx, &fy), 1e-8, &w);
            }
            if rel.is_strict_less() {
                let margin = fy.minus(&fx).min_eigenvalue();
                rec.expect("strict", margin > 0.0, || format!("image margin {margin:.3e}"), &w);
            }
            let back = phi_apply(&neg, &fx, tol)?;
            rec.residual("round-trip", rel_diff(&back, &x), 1e-9, &w);
            if segment_in_u_a(&neg, &fx, &fy, 64, tol)? {
                let (bx, by) = (phi_apply(&neg, &fx, tol)?, phi_apply(&neg, &fy, tol)?);
                if rel.is_leq() {
                    rec.residual("converse", order_violation(&bx, &by), 1e-8, &w);
                } else if !rel.is_geq() {
                    let img = loewner_compare(&fx, &fy, tol)?;
                    rec.expect(
                        "incomparable",
                        !img.is_leq() && !img.is_geq(),
                        || format!("incomparable pair has comparable images ({img:?})"),
                        &w,
                    );
                }
            }
        }
        Ok(())
    })
}

pub(super) fn interval(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("interval-criterion", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let (x, root) = draw(rng, 200, |r| {
            let rank = 1 + r.index(n);
            let p = r.psd(n, rank);
            let p = p.scaled(1.0 / p.spectral_norm());
            let root = sqrt_psd(&p, tol).ok()?;
            let mu = a.congruence(&root).min_eigenvalue();
            let s = if mu >= 0.0 {
                r.uniform(0.2, 3.0)
            } else {
                let f = if r.coin() { r.uniform(0.3, 0.9) } else { r.uniform(1.1, 2.5) };
                -f / mu
            };
            let x = p.scaled(s);
            let m = a.congruence(&root.scaled(s.sqrt())).min_eigenvalue();
            let clear = !(m > -1.1 && m < -0.9);
            (clear && well_conditioned(&base(&a, &x), 1e-3)).then(|| (x, root.scaled(s.sqrt())))
        })?;
        let criterion = interval_below_criterion(&a, &x, tol)?;
        let mut all_in = true;
        for j in 0..25 {
            let c = (j as f64 + 0.5) / 25.0;
            all_in &= in_u_a(&a, &x.scaled(c), tol)?;
        }
        for _ in 0..25 {
            all_in &= in_u_a(&a, &rng.effect(n).congruence(&root), tol)?;
        }
        rec.expect(
            "agreement",
            criterion == all_in,
            || format!("criterion {criterion}, sampled membership {all_in}"),
            &[("A", &a), ("X", &x)],
        );
        Ok(())
    })
}

pub(super) fn translation(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("translation", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let sigma = 0.5 / (1.0 + a.spectral_norm());
        let (x0, b, x) = draw(rng, 200, |r| {
            let x0 = r.hermitian(n).scaled(sigma);
            if !well_conditioned(&base(&a, &x0), 1e-2) {
                return None;
            }
            let b = translated_base(&a, &x0, tol).ok()?;
            let x = r.hermitian(n).scaled(0.5 / (1.0 + b.spectral_norm()));
            let ok = well_conditioned(&base(&b, &x), 1e-2) && well_conditioned(&base(&a, &x.plus(&x0)), 1e-2);
            ok.then_some((x0, b, x))
        })?;
        let w = [("A", &*a), ("X0", &*x0), ("X", &*x)];
        let lhs = phi_hat(&a, &x.plus(&x0), tol)?;
        let left = base(&a, &x0).inverse()?;
        let right = (a.as_matrix() * x0.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0)).inverse()?;
        let rhs = &(&(&left * phi_hat(&b, &x, tol)?.as_matrix()) * &right) + phi_hat(&a, &x0, tol)?.as_matrix();
        rec.residual("identity", (lhs.as_matrix() - &rhs).frobenius() / (1.0 + lhs.frobenius()), 1e-9, &w);

        // domains correspond exactly: (X + X₀)A + I = (XB + I)(X₀A + I)
        let z = rng.hermitian(n).scaled(rng.uniform(0.5, 4.0) * sigma);
        let (m1, m2) = (base(&a, &z.plus(&x0)), base(&b, &z));
        if well_conditioned(&m1, 1e-4) || well_conditioned(&m2, 1e-4) {
            let ea = in_w_a(&a, &z.plus(&x0), tol)?;
            let eb = in_w_a(&b, &z, tol)?;
            rec.expect("domain", ea == eb, || format!("X + X₀ ∈ W_A is {ea}, X ∈ W_B is {eb}"), &[("A", &a), ("X0", &x0), ("X", &z)]);
        }
        Ok(())
    })
}

pub(super) fn conjugation(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("conjugation", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let t = rng.invertible(n, 0.5, 2.0);
        let at = conjugated_spec(&a, &t, tol)?;
        let x = draw(rng, 200, |r| {
            let x = r.hermitian(n).scaled(0.5 / (1.0 + at.spectral_norm()));
            (admissible(&at, &x, cfg).ok()? && admissible(&a, &x.congruence(&t.adjoint()), cfg).ok()?).then_some(x)
        })?;
        let lhs = phi_apply(&at, &x, tol)?;
        let inner = phi_apply(&a, &x.congruence(&t.adjoint()), tol)?;
        let rhs = inner.congruence(&t.inverse()?.adjoint());
        rec.residual("identity", (lhs.as_matrix() - rhs.as_matrix()).frobenius() / (1.0 + lhs.frobenius()), 1e-9, &[("A", &a), ("T", &t), ("X", &x)]);
        Ok(())
    })
}

pub(super) fn orbit(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("congruence-orbit", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 2, 6);
        let a = rng.hermitian(n);
        let x = draw(rng, 200, |r| {
            let x = r.hermitian(n).scaled(r.uniform(0.2, 1.2) / (1.0 + a.spectral_norm()));
            admissible(&a, &x, cfg).ok()?.then_some(x)
        })?;
        let w = [("A", &*a), ("X", &*x)];
        let t = congruence_orbit(&a, &x, tol)?;
        let target = phi_hat(&x, &a, tol)?;
        let got = a.congruence(&t);
        let res = (target.as_matrix() - got.as_matrix()).frobenius() / (1.0 + a.frobenius());
        rec.residual("image", res, 1e-8, &w);
        let (before, after) = (a.inertia(tol), got.inertia(tol));
        rec.expect("inertia", before == after, || format!("{before:?} became {after:?}"), &w);
        Ok(())
    })
}

pub(super) fn ua_oracle(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("ua-oracle", cfg, cfg.trials, |rng, rec| {
        let tol = &cfg.tol;
        let n = dim(rng, 1, 4);
        let a = if rng.index(4) == 0 {
            let mut vals: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let k = rng.index(n);
            vals[k] = 0.0;
            rng.with_spectrum(&vals)
        } else {
            rng.hermitian(n)
        };
        let x = draw(rng, 200, |r| {
            let x = r.hermitian(n).scaled(r.uniform(0.2, 3.0) / (1e-3 + a.spectral_norm()));
            well_conditioned(&base(&a, &x), 1e-3).then_some(x)
        })?;
        let criterion = in_u_a(&a, &x, tol)?;
        let opts = PathSearch { seed: rng.index(1 << 30) as u64, ..PathSearch::default() };
        let oracle = search_path(&a, &x, &opts)?.is_some();
        let check = if criterion { "agreement-inside" } else { "agreement-outside" };
        rec.expect(check, criterion == oracle, || format!("criterion {criterion}, path oracle {oracle}"), &[("A", &a), ("X", &x)]);
        Ok(())
    })
}

fn planted_local_iso(rng: &mut Sampler, n: usize, cfg: &SuiteConfig) -> crate::Result<LocalIsoSpec> {
    let a = if rng.index(10) == 0 {
        Hermitian::zeros(n)
    } else {
        let h = rng.hermitian(n);
        h.scaled(rng.uniform(0.3, 1.5) / (1.0 + h.spectral_norm()))
    };
    LocalIsoSpec::new(a, rng.invertible(n, 0.5, 2.0), rng.coin(), &cfg.tol)
}

pub(super) fn identify(cfg: &SuiteConfig) -> SuiteOutcome {
    run_trials("identify", cfg, cfg.trials, |rng, rec| {
        let n = dim(rng, 1, 5);
        let planted = planted_local_iso(rng, n, cfg)?;
        let got = identify_parameters(n, |x| apply_local_iso(&planted, x, &cfg.tol), None, &cfg.tol)?;
        let w = [("A", &*planted.a), ("T", &planted.t)];
        rec.expect(
            "transpose",
            n == 1 || got.transpose == planted.transpose,
            || format!("recovered transpose = {}", got.transpose),
            &w,
        );
        rec.residual("A", rel_diff(&got.a, &planted.a), 1e-5, &w);
        rec.residual("T", rel_diff(&got.t.normalize_phase(), &planted.t.normalize_phase()), 1e-5, &w);
        Ok(())
    })
}
