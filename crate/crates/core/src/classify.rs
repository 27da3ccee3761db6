//! Block maps φ_{m,p}, signature classes of maximal order isomorphisms, and
//! order automorphisms of the effect algebra.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::halfplane::{f_r_hermitian, f_r_map};
use crate::linalg::{
    inv_sqrt_pd, negative_part, positive_part, singular_extremes, CMatrix, Hermitian, Inertia, Tolerances, C64, I,
};
use crate::order::{interval_contains, OperatorInterval};

/// U(m, p): Hermitian n×n matrices whose leading m×m corner has inertia (p, 0, m − p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockMapSpec {
    pub n: usize,
    pub m: usize,
    pub p: usize,
}

impl BlockMapSpec {
    pub fn new(n: usize, m: usize, p: usize) -> Result<Self> {
        if p > m || m > n {
            return Err(Error::InvalidArgument(format!("need 0 ≤ p ≤ m ≤ n, got n={n} m={m} p={p}")));
        }
        Ok(BlockMapSpec { n, m, p })
    }

    /// The spec of the inverse map, φ_{m, m−p}.
    pub fn inverse(&self) -> Self {
        BlockMapSpec { n: self.n, m: self.m, p: self.m - self.p }
    }

    /// (k, l): the largest ranks of PSD directions Y with X + cY, resp. X − cY,
    /// staying in U(m, p) for all c ≥ 0.
    pub fn rank_invariants(&self) -> (usize, usize) {
        (self.n + self.p - self.m, self.n - self.p)
    }

    /// Every spec for dimension n.
    pub fn all(n: usize) -> Vec<Self> {
        (0..=n).flat_map(|m| (0..=m).map(move |p| BlockMapSpec { n, m, p })).collect()
    }

    fn check(&self, x: &Hermitian) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.dim() });
        }
        Ok(())
    }
}

pub fn in_ump(spec: &BlockMapSpec, x: &Hermitian, tol: &Tolerances) -> Result<bool> {
    spec.check(x)?;
    if spec.m == 0 {
        return Ok(true);
    }
    let corner = x.principal_block(0, spec.m).eigen();
    let cut = tol.inv_margin * (1.0 + corner.norm());
    if corner.values.iter().any(|l| l.abs() <= cut) {
        return Ok(false);
    }
    Ok(corner.values.iter().filter(|&&l| l > 0.0).count() == spec.p)
}

/// [[−X₁₁⁻¹, iX₁₁⁻¹X₁₂], [−iX₁₂*X₁₁⁻¹, X₂₂ − X₁₂*X₁₁⁻¹X₁₂]]
pub fn phi_mp(spec: &BlockMapSpec, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    if !in_ump(spec, x, tol)? {
        return Err(Error::Membership(format!("X is not in U({}, {})", spec.m, spec.p)));
    }
    let (n, m) = (spec.n, spec.m);
    if m == 0 {
        return Ok(x.clone());
    }
    let x11_inv = x.as_matrix().block(0, 0, m, m).inverse()?;
    let x12 = x.as_matrix().block(0, m, m, n - m);
    let x22 = x.as_matrix().block(m, m, n - m, n - m);
    let top = &x11_inv * &x12;
    let mut out = CMatrix::zeros(n, n);
    out.set_block(0, 0, &-&x11_inv);
    out.set_block(0, m, &top.scale_c(I));
    out.set_block(m, 0, &top.adjoint().scale_c(-I));
    out.set_block(m, m, &(&x22 - &(&x12.adjoint() * &top)));
    Ok(Hermitian::hermitian_part(&out))
}

/// [[X₁₁, X₁₂, 0], [X₁₂*, X₂₂, iI], [0, −iI, 0]] in dimension 2n − m.
pub fn embed_2nm(m: usize, x: &Hermitian) -> Result<Hermitian> {
    let n = x.dim();
    if m > n {
        return Err(Error::InvalidArgument(format!("corner size {m} exceeds dimension {n}")));
    }
    let k = n - m;
    let mut out = CMatrix::zeros(n + k, n + k);
    out.set_block(0, 0, x.as_matrix());
    out.set_block(m, n, &CMatrix::scalar(k, I));
    out.set_block(n, m, &CMatrix::scalar(k, -I));
    Ok(Hermitian::hermitian_part(&out))
}

/// [[Y₁₁, 0, Y₁₂], [0, 0, −iI], [Y₁₂*, iI, Y₂₂]], the arrangement in which
/// −embed_2nm(X)⁻¹ carries φ_{m,p}(X).
pub fn corner_embedding(m: usize, y: &Hermitian) -> Result<Hermitian> {
    let n = y.dim();
    if m > n {
        return Err(Error::InvalidArgument(format!("corner size {m} exceeds dimension {n}")));
    }
    let k = n - m;
    let ym = y.as_matrix();
    let mut out = CMatrix::zeros(n + k, n + k);
    out.set_block(0, 0, &ym.block(0, 0, m, m));
    out.set_block(0, n, &ym.block(0, m, m, k));
    out.set_block(n, 0, &ym.block(m, 0, k, m));
    out.set_block(n, n, &ym.block(m, m, k, k));
    out.set_block(m, n, &CMatrix::scalar(k, -I));
    out.set_block(n, m, &CMatrix::scalar(k, I));
    Ok(Hermitian::hermitian_part(&out))
}

/// Signature class of Φ_A: p = rank A₊, m = rank A₊ + rank A₋.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub m: usize,
    pub p: usize,
    pub inertia: Inertia,
    /// Some eigenvalue sits within a factor 10 of the rank cutoff.
    pub borderline: bool,
}

pub fn classify_a(a: &Hermitian, tol: &Tolerances) -> Classification {
    let e = a.eigen();
    let inertia = e.inertia(tol);
    let cut = tol.psd_tol * (1.0 + e.norm());
    let borderline = e.values.iter().any(|l| l.abs() > 0.1 * cut && l.abs() < 10.0 * cut);
    Classification { m: inertia.pos + inertia.neg, p: inertia.pos, inertia, borderline }
}

pub fn are_equivalent(a: &Hermitian, b: &Hermitian, tol: &Tolerances) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let (ca, cb) = (classify_a(a, tol), classify_a(b, tol));
    Ok((ca.m, ca.p) == (cb.m, cb.p))
}

/// Number of distinct classes, counted by classifying one diagonal
/// representative of every signature.
pub fn class_count(n: usize, tol: &Tolerances) -> usize {
    let mut seen = BTreeSet::new();
    for pos in 0..=n {
        for neg in 0..=n - pos {
            let mut d = vec![0.0; n];
            d[..pos].fill(1.0);
            d[pos..pos + neg].fill(-1.0);
            let c = classify_a(&Hermitian::diag(&d), tol);
            seen.insert((c.m, c.p));
        }
    }
    seen.len()
}

/// Y = [[(X₁₁)₊, 0], [0, I]] (upward) or [[(X₁₁)₋, 0], [0, I]] (downward),
/// a PSD direction of rank n + p − m, resp. n − p, along which X ± cY stays in U(m, p).
pub fn rank_witness(spec: &BlockMapSpec, x: &Hermitian, upward: bool, tol: &Tolerances) -> Result<Hermitian> {
    if !in_ump(spec, x, tol)? {
        return Err(Error::Membership(format!("X is not in U({}, {})", spec.m, spec.p)));
    }
    let corner = x.principal_block(0, spec.m);
    let part = if upward { positive_part(&corner, tol) } else { negative_part(&corner, tol) };
    let mut y = CMatrix::identity(spec.n);
    y.set_block(0, 0, part.as_matrix());
    Ok(Hermitian::hermitian_part(&y))
}

/// Whether X + sign·c·Y ∈ U(m, p) for c on a logarithmic grid reaching 10⁶·(1 + ‖X‖).
/// Further out the relative invertibility cushion exceeds the fixed part of the spectrum.
pub fn ray_stays(spec: &BlockMapSpec, x: &Hermitian, y: &Hermitian, upward: bool, tol: &Tolerances) -> Result<bool> {
    spec.check(y)?;
    let sign = if upward { 1.0 } else { -1.0 };
    let scale = 1.0 + x.frobenius();
    for k in -12..=24 {
        let c = scale * 10f64.powf(k as f64 / 4.0);
        if !in_ump(spec, &x.plus(&y.scaled(sign * c)), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_effect(x: &Hermitian, tol: &Tolerances) -> Result<()> {
    if interval_contains(&OperatorInterval::effects(x.dim()), x, tol)? {
        Ok(())
    } else {
        Err(Error::Membership("X is not an effect (0 ≤ X ≤ I)".into()))
    }
}

fn require_invertible(t: &CMatrix, tol: &Tolerances) -> Result<usize> {
    let n = t.ensure_square()?;
    let (lo, hi) = singular_extremes(t)?;
    if lo <= tol.inv_margin * (1.0 + hi) {
        return Err(Error::InvalidArgument(format!("T must be invertible (σ_min = {lo:.3e})")));
    }
    Ok(n)
}

fn maybe_transpose(x: &Hermitian, transpose: bool) -> Hermitian {
    if transpose {
        x.transposed()
    } else {
        x.clone()
    }
}

/// X ↦ T·(X^τ(T*T − I) + I)⁻¹X^τ·T*
#[derive(Clone, Debug)]
pub struct EffectAutoSpec {
    pub t: CMatrix,
    pub transpose: bool,
}

impl EffectAutoSpec {
    pub fn new(t: CMatrix, transpose: bool, tol: &Tolerances) -> Result<Self> {
        require_invertible(&t, tol)?;
        Ok(EffectAutoSpec { t, transpose })
    }

    /// T*T − I
    pub fn base(&self) -> Hermitian {
        Hermitian::hermitian_part(&(&self.t.adjoint() * &self.t)).shifted(-1.0)
    }
}

pub fn effect_automorphism(spec: &EffectAutoSpec, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    if x.dim() != spec.t.rows() {
        return Err(Error::DimensionMismatch { expected: spec.t.rows(), found: x.dim() });
    }
    require_effect(x, tol)?;
    let y = maybe_transpose(x, spec.transpose);
    let a = spec.base();
    let inner = (y.as_matrix() * a.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0)).inverse()?;
    Ok(Hermitian::hermitian_part(&(&inner * y.as_matrix())).congruence(&spec.t))
}

/// X ↦ f_q(F^{-1/2}·f_p(T·X^τ·T*)·F^{-1/2}) with F = f_p(TT*).
#[derive(Clone, Debug)]
pub struct FpqSpec {
    pub p: f64,
    pub q: f64,
    pub t: CMatrix,
    pub transpose: bool,
}

impl FpqSpec {
    pub fn new(p: f64, q: f64, t: CMatrix, transpose: bool, tol: &Tolerances) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidArgument(format!("p must lie in (0, 1), got {p}")));
        }
        if !(q < 0.0 && q.is_finite()) {
            return Err(Error::InvalidArgument(format!("q must be negative, got {q}")));
        }
        require_invertible(&t, tol)?;
        let norm = singular_extremes(&t)?.1;
        if norm > 1.0 + tol.psd_tol {
            return Err(Error::InvalidArgument(format!("‖T‖ must be at most 1, got {norm:.6}")));
        }
        Ok(FpqSpec { p, q, t, transpose })
    }

    fn normalizer(&self, tol: &Tolerances) -> Result<Hermitian> {
        let tt = Hermitian::hermitian_part(&(&self.t * &self.t.adjoint()));
        inv_sqrt_pd(&f_r_hermitian(self.p, &tt, tol)?, tol)
    }
}

/// Direct evaluation with the resolvent form of f_p and f_q.
pub fn fpq_automorphism(spec: &FpqSpec, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    if x.dim() != spec.t.rows() {
        return Err(Error::DimensionMismatch { expected: spec.t.rows(), found: x.dim() });
    }
    require_effect(x, tol)?;
    let y = maybe_transpose(x, spec.transpose).congruence(&spec.t);
    let inner = Hermitian::hermitian_part(&f_r_map(spec.p, y.as_matrix(), tol)?).congruence(spec.normalizer(tol)?.as_matrix());
    Ok(Hermitian::hermitian_part(&f_r_map(spec.q, inner.as_matrix(), tol)?))
}

/// The four factors [0,I] → [0,TT*] → [0,f_p(TT*)] → [0,I] → [0,I], each through
/// the spectral calculus, in order.
pub fn fpq_factors(spec: &FpqSpec, x: &Hermitian, tol: &Tolerances) -> Result<[Hermitian; 4]> {
    require_effect(x, tol)?;
    let s1 = maybe_transpose(x, spec.transpose).congruence(&spec.t);
    let s2 = f_r_hermitian(spec.p, &s1, tol)?;
    let s3 = s2.congruence(spec.normalizer(tol)?.as_matrix());
    let s4 = f_r_hermitian(spec.q, &s3, tol)?;
    Ok([s1, s2, s3, s4])
}

/// X ↦ T·(X^τA + I)⁻¹X^τ·T* + B on E_n ∖ {0, I}, with separately chosen values at 0 and I.
#[derive(Clone, Debug)]
pub struct Pomjan2Map {
    pub t: CMatrix,
    pub a: Hermitian,
    pub b: Hermitian,
    pub transpose: bool,
    pub at_zero: Option<Hermitian>,
    pub at_one: Option<Hermitian>,
}

/// The endpoints of the effect algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    One,
}

impl Pomjan2Map {
    pub fn new(
        t: CMatrix,
        a: Hermitian,
        b: Hermitian,
        transpose: bool,
        at_zero: Option<Hermitian>,
        at_one: Option<Hermitian>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let n = require_invertible(&t, tol)?;
        for h in [Some(&a), Some(&b), at_zero.as_ref(), at_one.as_ref()].into_iter().flatten() {
            if h.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
            }
        }
        if a.min_eigenvalue() <= -1.0 + tol.inv_margin {
            return Err(Error::InvalidArgument("A must satisfy A > −I".into()));
        }
        let map = Pomjan2Map { t, a, b, transpose, at_zero: None, at_one: None };
        if let Some(z) = &at_zero {
            if !crate::linalg::loewner_compare(z, &map.b, tol)?.is_leq() {
                return Err(Error::InvalidArgument("φ(0) must satisfy φ(0) ≤ B".into()));
            }
        }
        if let Some(o) = &at_one {
            if !crate::linalg::loewner_compare(&map.formula_at_one()?, o, tol)?.is_leq() {
                return Err(Error::InvalidArgument("φ(I) must satisfy φ(I) ≥ T(A + I)⁻¹T* + B".into()));
            }
        }
        Ok(Pomjan2Map { at_zero, at_one, ..map })
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// T(A + I)⁻¹T* + B
    fn formula_at_one(&self) -> Result<Hermitian> {
        Ok(self.a.shifted(1.0).inverse()?.congruence(&self.t).plus(&self.b))
    }

    fn formula(&self, x: &Hermitian) -> Result<Hermitian> {
        let y = maybe_transpose(x, self.transpose);
        let inner = (y.as_matrix() * self.a.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0)).inverse()?;
        Ok(Hermitian::hermitian_part(&(&inner * y.as_matrix())).congruence(&self.t).plus(&self.b))
    }

    pub fn apply(&self, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        require_effect(x, tol)?;
        let n = self.dim();
        let at = |target: &Hermitian| x.minus(target).frobenius() <= tol.herm_tol;
        match (&self.at_zero, &self.at_one) {
            (Some(z), _) if at(&Hermitian::zeros(n)) => Ok(z.clone()),
            (_, Some(o)) if at(&Hermitian::identity(n)) => Ok(o.clone()),
            _ => self.formula(x),
        }
    }

    /// ‖φ(E) − lim φ(X)‖ as X → E through the interior, estimated at distance 1e−9.
    pub fn continuity_jump(&self, endpoint: Endpoint, tol: &Tolerances) -> Result<f64> {
        let n = self.dim();
        let (e, near) = match endpoint {
            Endpoint::Zero => (Hermitian::zeros(n), Hermitian::scalar(n, 1e-9)),
            Endpoint::One => (Hermitian::identity(n), Hermitian::scalar(n, 1.0 - 1e-9)),
        };
        Ok(self.apply(&e, tol)?.minus(&self.apply(&near, tol)?).frobenius())
    }

    /// Whether the map is continuous at the endpoint, jump below 1e−6·(1 + ‖φ(E)‖).
    pub fn is_continuous_at(&self, endpoint: Endpoint, tol: &Tolerances) -> Result<bool> {
        let n = self.dim();
        let e = match endpoint {
            Endpoint::Zero => Hermitian::zeros(n),
            Endpoint::One => Hermitian::identity(n),
        };
        let scale = 1.0 + self.apply(&e, tol)?.frobenius();
        Ok(self.continuity_jump(endpoint, tol)? <= 1e-6 * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn ump_examples() {
        let t = tol();
        let x = Hermitian::from_real_rows(&[&[-1.0, 2.0], &[2.0, 0.5]]);
        assert!(in_ump(&BlockMapSpec::new(2, 0, 0).unwrap(), &x, &t).unwrap());
        assert!(in_ump(&BlockMapSpec::new(2, 2, 2).unwrap(), &Hermitian::identity(2), &t).unwrap());
        assert!(in_ump(&BlockMapSpec::new(2, 1, 0).unwrap(), &x, &t).unwrap());
        assert!(!in_ump(&BlockMapSpec::new(2, 1, 1).unwrap(), &x, &t).unwrap());
        assert!(BlockMapSpec::new(2, 1, 2).is_err());
    }

    #[test]
    fn phi_mp_examples() {
        let t = tol();
        let x = Hermitian::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let id = phi_mp(&BlockMapSpec::new(2, 0, 0).unwrap(), &x, &t).unwrap();
        assert_eq!(id, x);
        let full = phi_mp(&BlockMapSpec::new(2, 2, 2).unwrap(), &x, &t).unwrap();
        assert!((full.as_matrix() + &x.as_matrix().inverse().unwrap()).frobenius() < 1e-14);
        let got = phi_mp(&BlockMapSpec::new(2, 1, 1).unwrap(), &x, &t).unwrap();
        let want = CMatrix::from_rows(&[
            vec![C64::new(-0.5, 0.0), C64::new(0.0, 0.5)],
            vec![C64::new(0.0, -0.5), C64::new(2.5, 0.0)],
        ]);
        assert!((got.as_matrix() - &want).frobenius() < 1e-15);
        // the same value through the embedding identity
        let lhs = -&embed_2nm(1, &x).unwrap().as_matrix().inverse().unwrap();
        assert!((&lhs - corner_embedding(1, &got).unwrap().as_matrix()).frobenius() < 1e-14);
    }

    #[test]
    fn embed_examples() {
        let t = tol();
        let x = Hermitian::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        assert_eq!(embed_2nm(2, &x).unwrap(), x);
        for v in [-3.0, 0.0, 0.7] {
            let e = embed_2nm(0, &Hermitian::diag(&[v])).unwrap();
            assert_eq!(e.inertia(&t), Inertia::new(1, 0, 1));
            let ev = e.eigen().values;
            assert!((ev[1] - (v / 2.0 + (v * v / 4.0 + 1.0).sqrt())).abs() < 1e-14);
        }
    }

    #[test]
    fn classification_examples() {
        let t = tol();
        let c = classify_a(&Hermitian::zeros(3), &t);
        assert_eq!((c.m, c.p), (0, 0));
        let c = classify_a(&Hermitian::identity(3), &t);
        assert_eq!((c.m, c.p), (3, 3));
        let c = classify_a(&Hermitian::diag(&[2.0, -1.0, 0.0]), &t);
        assert_eq!((c.m, c.p), (2, 1));
        assert!(!c.borderline);
        assert!(classify_a(&Hermitian::diag(&[1.0, 2e-8]), &t).borderline);
        assert!(are_equivalent(&Hermitian::diag(&[1.0, -1.0]), &Hermitian::diag(&[5.0, -3.0]), &t).unwrap());
        assert!(!are_equivalent(&Hermitian::diag(&[1.0, 1.0]), &Hermitian::diag(&[1.0, -1.0]), &t).unwrap());
        for (n, want) in [(2, 6), (3, 10), (4, 15), (5, 21), (6, 28)] {
            assert_eq!(class_count(n, &t), want);
        }
    }

    #[test]
    fn effect_examples() {
        let t = tol();
        let x = Hermitian::from_real_rows(&[&[0.5, 0.2], &[0.2, 0.3]]);
        let id = EffectAutoSpec::new(CMatrix::identity(2), false, &t).unwrap();
        assert!(effect_automorphism(&id, &x, &t).unwrap().minus(&x).frobenius() < 1e-15);
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let u = CMatrix::from_rows(&[vec![C64::new(c, 0.0), C64::new(0.0, c)], vec![C64::new(0.0, c), C64::new(c, 0.0)]]);
        let rot = EffectAutoSpec::new(u.clone(), false, &t).unwrap();
        assert!(effect_automorphism(&rot, &x, &t).unwrap().minus(&x.congruence(&u)).frobenius() < 1e-14);
        // T = diag(2, 1), X = I/2: diagonal entries 4·(1/2)/(3/2 + 1) ... per eigenbasis
        let d = EffectAutoSpec::new(CMatrix::diag_real(&[2.0, 1.0]), false, &t).unwrap();
        let got = effect_automorphism(&d, &Hermitian::scalar(2, 0.5), &t).unwrap();
        // first entry: 4 · 0.5 / (0.5·3 + 1) = 0.8; second: 0.5 / (0 + 1) = 0.5
        assert!(got.minus(&Hermitian::diag(&[0.8, 0.5])).frobenius() < 1e-15);
        assert!(effect_automorphism(&d, &Hermitian::scalar(2, 1.5), &t).is_err());
    }

    #[test]
    fn fpq_fixes_endpoints() {
        let t = tol();
        let tm = CMatrix::from_real_rows(&[&[0.8, 0.1], &[-0.2, 0.6]]);
        let spec = FpqSpec::new(0.4, -1.5, tm, false, &t).unwrap();
        assert!(fpq_automorphism(&spec, &Hermitian::zeros(2), &t).unwrap().frobenius() < 1e-12);
        let one = fpq_automorphism(&spec, &Hermitian::identity(2), &t).unwrap();
        assert!(one.minus(&Hermitian::identity(2)).frobenius() < 1e-12);
        assert!(FpqSpec::new(1.2, -1.0, CMatrix::identity(2), false, &t).is_err());
        assert!(FpqSpec::new(0.5, 1.0, CMatrix::identity(2), false, &t).is_err());
        assert!(FpqSpec::new(0.5, -1.0, CMatrix::scalar(2, C64::new(2.0, 0.0)), false, &t).is_err());
    }

    #[test]
    fn fpq_near_identity() {
        let t = tol();
        let spec = FpqSpec::new(1e-6, -1e-6, CMatrix::identity(2), false, &t).unwrap();
        let x = Hermitian::from_real_rows(&[&[0.5, 0.2], &[0.2, 0.3]]);
        assert!(fpq_automorphism(&spec, &x, &t).unwrap().minus(&x).frobenius() < 1e-5);
    }

    #[test]
    fn pomjan2_fixture() {
        let t = tol();
        let n = 2;
        let map = Pomjan2Map::new(
            CMatrix::identity(n),
            Hermitian::zeros(n),
            Hermitian::zeros(n),
            false,
            None,
            Some(Hermitian::scalar(n, 2.0)),
            &t,
        )
        .unwrap();
        let x = Hermitian::from_real_rows(&[&[0.5, 0.2], &[0.2, 0.3]]);
        assert_eq!(map.apply(&x, &t).unwrap(), x);
        assert_eq!(map.apply(&Hermitian::identity(n), &t).unwrap(), Hermitian::scalar(n, 2.0));
        assert!(!map.is_continuous_at(Endpoint::One, &t).unwrap());
        assert!(map.is_continuous_at(Endpoint::Zero, &t).unwrap());
        let bad = Pomjan2Map::new(
            CMatrix::identity(n),
            Hermitian::zeros(n),
            Hermitian::zeros(n),
            false,
            Some(Hermitian::scalar(n, 0.5)),
            None,
            &t,
        );
        assert!(bad.is_err());
    }
}
