//! The generalized upper half-plane Π_n = { Z : Im Z > 0 } and its
//! biholomorphic automorphisms.

use crate::error::{Error, Result};
use crate::linalg::{
    inv_sqrt_pd, singular_extremes, spectral_apply, sqrt_psd, CMatrix, Domain, Hermitian, Tolerances, C64, I,
};
use crate::phimap::theta_unchecked;
use crate::sample::Sampler;

/// Membership in Π_n together with the margin λ_min(Im Z).
pub fn in_half_plane(z: &CMatrix, tol: &Tolerances) -> Result<(bool, f64)> {
    z.ensure_square()?;
    let margin = Hermitian::hermitian_part(&z.imag_part()).min_eigenvalue();
    Ok((margin > tol.inv_margin, margin))
}

fn require_half_plane(z: &CMatrix, tol: &Tolerances) -> Result<()> {
    let (inside, margin) = in_half_plane(z, tol)?;
    if inside {
        Ok(())
    } else {
        Err(Error::Membership(format!("operand is not in the upper half-plane (λ_min(Im Z) = {margin:.3e})")))
    }
}

fn checked_inverse(m: &CMatrix, tol: &Tolerances, what: &str) -> Result<CMatrix> {
    let (lo, hi) = singular_extremes(m)?;
    if lo <= tol.inv_margin * (1.0 + hi) {
        return Err(Error::Singular(format!("{what} (σ_min = {lo:.3e})")));
    }
    m.inverse()
}

/// Y ↦ i(Y + I)(I − Y)⁻¹, open unit ball → Π_n.
pub fn cayley(y: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let n = y.ensure_square()?;
    let norm = singular_extremes(y)?.1;
    if norm >= 1.0 - tol.inv_margin {
        return Err(Error::DomainViolation(format!("Cayley transform needs ‖Y‖ < 1, got {norm:.6}")));
    }
    let id = CMatrix::identity(n);
    let num = (y + &id).scale_c(I);
    Ok(&num * &(&id - y).inverse()?)
}

/// Z ↦ (Z − iI)(Z + iI)⁻¹, Π_n → open unit ball.
pub fn inverse_cayley(z: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    require_half_plane(z, tol)?;
    let n = z.rows();
    let shift = CMatrix::scalar(n, I);
    Ok(&(z - &shift) * &(z + &shift).inverse()?)
}

/// Z ↦ −Z⁻¹
pub fn neg_inverse(z: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    z.ensure_square()?;
    Ok(-&checked_inverse(z, tol, "neg_inverse of a singular matrix")?)
}

/// f_r(x) = x / (r·x + 1 − r)
pub fn f_r_scalar(r: f64, x: f64) -> f64 {
    x / (r * x + 1.0 - r)
}

/// Pole of f_r, the point 1 − 1/r.
pub fn f_r_pole(r: f64) -> f64 {
    1.0 - 1.0 / r
}

fn check_r(r: f64) -> Result<()> {
    if r < 1.0 && r != 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("f_r needs r < 1 and r ≠ 0, got {r}")))
    }
}

/// Resolvent form (1/r)·I − ((1 − r)/r²)·((1 − r)/r·I + X)⁻¹ on arbitrary square X.
pub fn f_r_map(r: f64, x: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    check_r(r)?;
    let n = x.ensure_square()?;
    let shifted = x.add_scalar_diag(C64::new((1.0 - r) / r, 0.0));
    let res = checked_inverse(&shifted, tol, "spectrum of X meets the pole of f_r")?;
    Ok(&CMatrix::scalar(n, C64::new(1.0 / r, 0.0)) - &res.scale((1.0 - r) / (r * r)))
}

/// f_r on a Hermitian matrix through the spectral calculus.
pub fn f_r_hermitian(r: f64, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    check_r(r)?;
    spectral_apply(x, |l| f_r_scalar(r, l), &Domain::AvoidPoles(vec![f_r_pole(r)]), tol)
}

/// Parameters of the automorphism
/// Z ↦ T·((Z^τ − B)⁻¹ + A)⁻¹·T* + C of Π_n, τ ∈ {identity, transpose}.
#[derive(Clone, Debug)]
pub struct MobiusAutomorphism {
    pub t: CMatrix,
    pub a: Hermitian,
    pub b: Hermitian,
    pub c: Hermitian,
    pub transpose: bool,
}

impl MobiusAutomorphism {
    pub fn new(t: CMatrix, a: Hermitian, b: Hermitian, c: Hermitian, transpose: bool, tol: &Tolerances) -> Result<Self> {
        let n = t.ensure_square()?;
        for h in [&a, &b, &c] {
            if h.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
            }
        }
        let (lo, hi) = singular_extremes(&t)?;
        if lo <= tol.inv_margin * (1.0 + hi) {
            return Err(Error::InvalidArgument(format!("T must be invertible (σ_min = {lo:.3e})")));
        }
        Ok(MobiusAutomorphism { t, a, b, c, transpose })
    }

    /// B = C = 0: Z ↦ T·Θ_A(Z^τ)·T*.
    pub fn canonical(t: CMatrix, a: Hermitian, transpose: bool, tol: &Tolerances) -> Result<Self> {
        let n = a.dim();
        Self::new(t, a, Hermitian::zeros(n), Hermitian::zeros(n), transpose, tol)
    }

    pub fn identity(n: usize) -> Self {
        MobiusAutomorphism {
            t: CMatrix::identity(n),
            a: Hermitian::zeros(n),
            b: Hermitian::zeros(n),
            c: Hermitian::zeros(n),
            transpose: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// Evaluates the automorphism as the composition of its primitive moves.
    /// Points off Π_n are accepted as long as both inversions are well conditioned.
    pub fn apply(&self, z: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
        if z.rows() != self.dim() || !z.is_square() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: z.rows() });
        }
        let zt = if self.transpose { z.transpose() } else { z.clone() };
        let w = &zt - self.b.as_matrix();
        let w = -&checked_inverse(&w, tol, "Z^τ − B is singular")?;
        let w = &w - self.a.as_matrix();
        let w = -&checked_inverse(&w, tol, "second inversion is singular")?;
        Ok(&(&(&self.t * &w) * &self.t.adjoint()) + self.c.as_matrix())
    }
}

/// Controls for [`fit_canonical`].
#[derive(Clone, Debug)]
pub struct FitOptions {
    /// A Hermitian point where the map extends continuously to the real boundary.
    pub anchor: Option<Hermitian>,
    pub seed: u64,
    pub samples: usize,
    pub rel_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { anchor: None, seed: 0, samples: 20, rel_tol: 1e-7 }
    }
}

/// Recovers the parameters of a black-box automorphism of Π_n.
///
/// The map is first recentred at the anchor (default 0) so that it fixes the
/// boundary point 0. Reading A₁ + iA₂ at iI gives the candidate
/// f(Z) = T₀·(Z⁻¹ + A)⁻¹·T₀* with A = A₂^{-1/2}A₁A₂^{-1/2},
/// T₀ = A₂^{1/2}(A² + I)^{1/2}; the leftover f⁻¹∘φ fixes iI and is a unitary
/// conjugation Z ↦ uZ^τu*, read off from its action on the matrix units.
pub fn fit_canonical<F>(n: usize, evaluator: F, opts: &FitOptions, tol: &Tolerances) -> Result<MobiusAutomorphism>
where
    F: Fn(&CMatrix) -> Result<CMatrix>,
{
    let anchor = opts.anchor.clone().unwrap_or_else(|| Hermitian::zeros(n));
    let offset = boundary_value(&evaluator, &anchor)?;
    let centred = |z: &CMatrix| -> Result<CMatrix> { Ok(&evaluator(&(z + anchor.as_matrix()))? - offset.as_matrix()) };

    let iid = CMatrix::scalar(n, I);
    let w = centred(&iid)?;
    let a1 = Hermitian::hermitian_part(&w.real_part());
    let a2 = Hermitian::hermitian_part(&w.imag_part());
    let a2_isqrt = inv_sqrt_pd(&a2, tol).map_err(|_| Error::NotCanonical { residual: f64::INFINITY })?;
    let a2_sqrt = sqrt_psd(&a2, tol)?;
    let a = a1.congruence(&a2_isqrt);
    let a_sq_plus_one = spectral_apply(&a, |l| (l * l + 1.0).sqrt(), &Domain::Real, tol)?;
    let t0 = a2_sqrt.as_matrix() * a_sq_plus_one.as_matrix();
    let t0_inv = t0.inverse()?;

    // h = f⁻¹ ∘ φ fixes iI
    let h = |z: &CMatrix| -> Result<CMatrix> {
        let v = centred(z)?;
        let pulled = &(&t0_inv * &v) * &t0_inv.adjoint();
        theta_unchecked(&a.negated(), &pulled)
    };
    let mut units = vec![vec![CMatrix::zeros(n, n); n]; n];
    for (j, row) in units.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let z = &iid + &CMatrix::kron_unit(n, j, k);
            *slot = &h(&z)? - &iid;
        }
    }

    let mut rng = Sampler::new(opts.seed ^ 0x05ee_df17);
    let probe = rng.genuinely_complex_hermitian(n).as_matrix() + &iid;
    let target = evaluator(&(&probe + anchor.as_matrix()))?;

    let mut best: Option<(f64, MobiusAutomorphism)> = None;
    for transpose in [false, true] {
        let Some((u, _)) = rank_one_columns(&units, transpose) else { continue };
        let t = (&t0 * &u).normalize_phase();
        let a_fit = a.congruence(&u.adjoint());
        let b = if transpose { anchor.transposed() } else { anchor.clone() };
        let Ok(m) = MobiusAutomorphism::new(t, a_fit, b, offset.clone(), transpose, tol) else { continue };
        let Ok(val) = m.apply(&(&probe + anchor.as_matrix()), tol) else { continue };
        let r = (&val - &target).frobenius() / (1.0 + target.frobenius());
        if best.as_ref().is_none_or(|(br, _)| r < 0.5 * br) {
            best = Some((r, m));
        }
    }
    let (_, m) = best.ok_or(Error::NotCanonical { residual: f64::INFINITY })?;

    let mut worst = 0.0f64;
    for _ in 0..opts.samples {
        let z = rng.half_plane(n);
        let want = evaluator(&z)?;
        let got = m.apply(&z, tol)?;
        worst = worst.max((&got - &want).frobenius() / (1.0 + want.frobenius()));
    }
    if worst > opts.rel_tol || !worst.is_finite() {
        return Err(Error::NotCanonical { residual: worst });
    }
    Ok(m)
}

/// φ(X₀) for Hermitian X₀, falling back to a Richardson limit of φ(X₀ + icI).
fn boundary_value<F>(evaluator: &F, x0: &Hermitian) -> Result<Hermitian>
where
    F: Fn(&CMatrix) -> Result<CMatrix>,
{
    let n = x0.dim();
    if let Ok(v) = evaluator(x0.as_matrix()) {
        if v.is_finite() {
            return Ok(Hermitian::hermitian_part(&v));
        }
    }
    let at = |c: f64| evaluator(&(x0.as_matrix() + &CMatrix::scalar(n, C64::new(0.0, c))));
    let (c1, c2, c3) = (at(4e-4)?, at(2e-4)?, at(1e-4)?);
    // cancel the O(c) and O(c²) terms
    let lim = &(&c3.scale(8.0) - &c2.scale(6.0)) + &c1;
    Ok(Hermitian::hermitian_part(&lim.scale(1.0 / 3.0)))
}

/// Recovers u from K_jk = u_j·u_k* (or u_k·u_j* when `transpose`), where
/// u_j is column j, together with the fit residual. Returns `None` when the
/// residual exceeds 1e−6 of the data scale.
pub(crate) fn rank_one_columns(units: &[Vec<CMatrix>], transpose: bool) -> Option<(CMatrix, f64)> {
    let n = units.len();
    let k = |j: usize, l: usize| if transpose { &units[l][j] } else { &units[j][l] };
    let k00 = k(0, 0);
    let pivot = (0..n).max_by(|&a, &b| k00[(a, a)].re.total_cmp(&k00[(b, b)].re))?;
    let d = k00[(pivot, pivot)].re;
    if !(d > 0.0) {
        return None;
    }
    let u0: Vec<C64> = (0..n).map(|i| k00[(i, pivot)] / d.sqrt()).collect();
    let u0_norm2: f64 = u0.iter().map(|z| z.norm_sqr()).sum();
    let mut u = CMatrix::zeros(n, n);
    for j in 0..n {
        let kj0 = k(j, 0);
        for i in 0..n {
            let v: C64 = (0..n).map(|l| kj0[(i, l)] * u0[l]).sum();
            u[(i, j)] = v / u0_norm2;
        }
    }
    let scale: f64 = units.iter().flatten().map(|m| m.frobenius()).sum::<f64>().max(1.0);
    let mut res = 0.0;
    for j in 0..n {
        for l in 0..n {
            let cj = u.column(j);
            let cl = u.column(l);
            let outer = CMatrix::from_fn(n, n, |a, b| cj[a] * cl[b].conj());
            res += (&outer - k(j, l)).frobenius();
        }
    }
    (res <= 1e-6 * scale).then_some((u, res))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn membership_examples() {
        let t = tol();
        let (inside, margin) = in_half_plane(&CMatrix::scalar(3, I), &t).unwrap();
        assert!(inside && (margin - 1.0).abs() < 1e-15);
        let (inside, _) = in_half_plane(Hermitian::diag(&[1.0, -2.0]).as_matrix(), &t).unwrap();
        assert!(!inside);
        assert!(in_half_plane(&CMatrix::zeros(2, 3), &t).is_err());
    }

    #[test]
    fn cayley_fixed_points() {
        let t = tol();
        let z = cayley(&CMatrix::zeros(2, 2), &t).unwrap();
        assert!((&z - &CMatrix::scalar(2, I)).frobenius() < 1e-15);
        let y = inverse_cayley(&CMatrix::scalar(2, I), &t).unwrap();
        assert!(y.frobenius() < 1e-15);
        assert!(cayley(&CMatrix::identity(2), &t).is_err());
        assert!(inverse_cayley(&CMatrix::identity(2), &t).is_err());
    }

    #[test]
    fn neg_inverse_examples() {
        let t = tol();
        let z = neg_inverse(&CMatrix::scalar(2, I), &t).unwrap();
        assert!((&z - &CMatrix::scalar(2, I)).frobenius() < 1e-15);
        let z = neg_inverse(&CMatrix::scalar(2, 2.0 * I), &t).unwrap();
        assert!((&z - &CMatrix::scalar(2, 0.5 * I)).frobenius() < 1e-15);
        assert!(matches!(neg_inverse(&CMatrix::diag_real(&[1.0, 0.0]), &t), Err(Error::Singular(_))));
    }

    #[test]
    fn f_r_examples() {
        let t = tol();
        for r in [-2.0, -0.5, 0.3, 0.9] {
            let z = f_r_map(r, &CMatrix::zeros(2, 2), &t).unwrap();
            assert!(z.frobenius() < 1e-14);
            let one = f_r_map(r, &CMatrix::identity(2), &t).unwrap();
            assert!((&one - &CMatrix::identity(2)).frobenius() < 1e-14);
        }
        assert!((f_r_scalar(0.5, 0.5) - 2.0 / 3.0).abs() < 1e-15);
        let v = f_r_map(0.5, &CMatrix::scalar(1, C64::new(0.5, 0.0)), &t).unwrap();
        assert!((v[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
        assert!(f_r_map(1.0, &CMatrix::zeros(1, 1), &t).is_err());
        assert!(f_r_map(0.0, &CMatrix::zeros(1, 1), &t).is_err());
        // pole at 1 − 1/r = −1 for r = 1/2
        assert!(f_r_map(0.5, &CMatrix::scalar(1, C64::new(-1.0, 0.0)), &t).is_err());
    }

    #[test]
    fn mobius_identity_and_translation() {
        let t = tol();
        let z = CMatrix::from_rows(&[vec![C64::new(1.0, 2.0), C64::new(0.5, 0.0)], vec![C64::new(0.0, 0.3), C64::new(-1.0, 1.5)]]);
        let id = MobiusAutomorphism::identity(2);
        assert!((&id.apply(&z, &t).unwrap() - &z).frobenius() < 1e-13);
        let c0 = Hermitian::from_real_rows(&[&[1.0, 2.0], &[2.0, -3.0]]);
        let tr = MobiusAutomorphism::new(CMatrix::identity(2), Hermitian::zeros(2), Hermitian::zeros(2), c0.clone(), false, &t)
            .unwrap();
        assert!((&tr.apply(&z, &t).unwrap() - &(&z + c0.as_matrix())).frobenius() < 1e-13);
    }

    #[test]
    fn fit_identity() {
        let t = tol();
        let m = fit_canonical(3, |z: &CMatrix| Ok(z.clone()), &FitOptions::default(), &t).unwrap();
        assert!(m.a.frobenius() < 1e-12);
        assert!((&m.t - &CMatrix::identity(3)).frobenius() < 1e-12);
        assert!(!m.transpose);
    }

    #[test]
    fn fit_rejects_non_automorphism() {
        let t = tol();
        let r = fit_canonical(2, |z: &CMatrix| Ok(&(z * z) + &CMatrix::scalar(2, I)), &FitOptions::default(), &t);
        assert!(matches!(r, Err(Error::NotCanonical { .. })));
    }
}
