//! Operator intervals and the finite-rank order tests built on them.

use crate::error::{Error, Result};
use crate::linalg::{loewner_compare, pinv_psd, CMatrix, Hermitian, LoewnerOrder, Tolerances, C64};

/// An operator interval. A missing bound stands for ±∞.
#[derive(Clone, Debug)]
pub struct OperatorInterval {
    pub lower: Option<Hermitian>,
    pub upper: Option<Hermitian>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl OperatorInterval {
    pub fn new(
        lower: Option<Hermitian>,
        upper: Option<Hermitian>,
        lower_closed: bool,
        upper_closed: bool,
        tol: &Tolerances,
    ) -> Result<Self> {
        if let (Some(a), Some(b)) = (&lower, &upper) {
            let rel = loewner_compare(a, b, tol)?;
            let ok = if lower_closed && upper_closed { rel.is_leq() } else { rel.is_strict_less() };
            if !ok {
                return Err(Error::InvalidArgument(format!("interval bounds are not ordered ({rel:?})")));
            }
        }
        Ok(OperatorInterval { lower, upper, lower_closed, upper_closed })
    }

    /// [A, B]
    pub fn closed(a: Hermitian, b: Hermitian, tol: &Tolerances) -> Result<Self> {
        Self::new(Some(a), Some(b), true, true, tol)
    }

    /// (A, B)
    pub fn open(a: Hermitian, b: Hermitian, tol: &Tolerances) -> Result<Self> {
        Self::new(Some(a), Some(b), false, false, tol)
    }

    /// [A, ∞)
    pub fn at_least(a: Hermitian) -> Self {
        OperatorInterval { lower: Some(a), upper: None, lower_closed: true, upper_closed: false }
    }

    /// The effect algebra [0, I].
    pub fn effects(n: usize) -> Self {
        OperatorInterval {
            lower: Some(Hermitian::zeros(n)),
            upper: Some(Hermitian::identity(n)),
            lower_closed: true,
            upper_closed: true,
        }
    }

    pub fn contains(&self, x: &Hermitian, tol: &Tolerances) -> Result<bool> {
        interval_contains(self, x, tol)
    }
}

pub fn interval_contains(j: &OperatorInterval, x: &Hermitian, tol: &Tolerances) -> Result<bool> {
    let side = |bound: &Option<Hermitian>, closed: bool, below: bool| -> Result<bool> {
        let Some(b) = bound else { return Ok(true) };
        let rel = if below { loewner_compare(b, x, tol)? } else { loewner_compare(x, b, tol)? };
        Ok(if closed { rel.is_leq() } else { rel == LoewnerOrder::Less })
    };
    Ok(side(&j.lower, j.lower_closed, true)? && side(&j.upper, j.upper_closed, false)?)
}

/// Decides R ≤ A for a rank-one R ≥ 0 and A ≥ 0 by range inclusion plus
/// the trace test tr(A†R) ≤ 1.
pub fn rank_one_leq(r: &Hermitian, a: &Hermitian, tol: &Tolerances) -> Result<bool> {
    if r.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: r.dim() });
    }
    let er = r.eigen();
    let ir = er.inertia(tol);
    if ir.neg != 0 || ir.pos != 1 {
        return Err(Error::InvalidArgument(format!("R must be PSD of rank one, inertia {ir}")));
    }
    let ea = a.eigen();
    if ea.inertia(tol).neg != 0 {
        return Err(Error::InvalidArgument("A must be positive semidefinite".into()));
    }
    let n = r.dim();
    let lambda_r = er.values[n - 1];
    let v = er.vectors.column(n - 1);

    // component of range(R) in ker(A)
    let cut = tol.psd_tol * (1.0 + ea.norm());
    let mut kernel_weight = 0.0;
    for k in (0..n).filter(|&k| ea.values[k] <= cut) {
        let w: C64 = (0..n).map(|i| ea.vectors[(i, k)].conj() * v[i]).sum();
        kernel_weight += w.norm_sqr();
    }
    if lambda_r * kernel_weight > tol.psd_tol * (1.0 + ea.norm().max(lambda_r)) {
        return Ok(false);
    }
    let trace = (&pinv_psd(a, tol)?.into_matrix() * r.as_matrix()).trace().re;
    Ok(trace <= 1.0 + tol.psd_tol)
}

/// Affine order isomorphism between [A, B] and the effect algebra E_r,
/// r = rank(B − A).
#[derive(Clone, Debug)]
pub struct AffineIntervalIso {
    base: Hermitian,
    /// n×r isometry onto range(B − A).
    isometry: CMatrix,
    /// λᵢ^{-1/2} for the nonzero eigenvalues of B − A.
    inv_sqrt: Vec<f64>,
    interval: OperatorInterval,
}

impl AffineIntervalIso {
    pub fn rank(&self) -> usize {
        self.inv_sqrt.len()
    }

    pub fn interval(&self) -> &OperatorInterval {
        &self.interval
    }

    /// [A, B] → E_r: X ↦ D·W*(X − A)·W·D.
    pub fn forward(&self, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
        if !self.interval.contains(x, tol)? {
            return Err(Error::Membership("operand is outside [A, B]".into()));
        }
        Ok(self.forward_unchecked(x))
    }

    pub fn forward_unchecked(&self, x: &Hermitian) -> Hermitian {
        let d = CMatrix::diag_real(&self.inv_sqrt);
        let wd = &self.isometry * &d;
        x.minus(&self.base).congruence(&wd.adjoint())
    }

    /// E_r → [A, B]: Y ↦ A + W·D⁻¹·Y·D⁻¹·W*.
    pub fn backward(&self, y: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
        if y.dim() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: y.dim() });
        }
        if !OperatorInterval::effects(self.rank()).contains(y, tol)? {
            return Err(Error::Membership("operand is outside the effect algebra".into()));
        }
        Ok(self.backward_unchecked(y))
    }

    pub fn backward_unchecked(&self, y: &Hermitian) -> Hermitian {
        let sqrt: Vec<f64> = self.inv_sqrt.iter().map(|s| 1.0 / s).collect();
        let wd = &self.isometry * &CMatrix::diag_real(&sqrt);
        self.base.plus(&y.congruence(&wd))
    }
}

pub fn affine_interval_iso(a: &Hermitian, b: &Hermitian, tol: &Tolerances) -> Result<AffineIntervalIso> {
    let rel = loewner_compare(a, b, tol)?;
    if rel == LoewnerOrder::Equal {
        return Err(Error::InvalidArgument("interval endpoints coincide".into()));
    }
    if !rel.is_leq() {
        return Err(Error::InvalidArgument(format!("lower endpoint is not below upper endpoint ({rel:?})")));
    }
    let e = b.minus(a).eigen();
    let support = e.support(tol);
    let isometry = e.vectors.select_columns(&support);
    let inv_sqrt = support.iter().map(|&k| 1.0 / e.values[k].sqrt()).collect();
    Ok(AffineIntervalIso {
        base: a.clone(),
        isometry,
        inv_sqrt,
        interval: OperatorInterval::closed(a.clone(), b.clone(), tol)?,
    })
}

/// Largest ‖P − E‖ for which d·E ≤ P + c·Q, with P, Q orthogonal rank-one
/// projections in dimension two and E a rank-one projection.
pub fn coron_threshold(c: f64, d: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&c) || !(d > c && d <= 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 ≤ c < d ≤ 1, got c = {c}, d = {d}")));
    }
    Ok(((c - c * d) / (d - c * d)).sqrt())
}

/// Bloch representation of a point on the sphere of radius 1/2 as a rank-one projection.
pub fn bloch_projection(p: [f64; 3]) -> Hermitian {
    let [x, y, z] = p;
    Hermitian::hermitian_part(&CMatrix::from_rows(&[
        vec![C64::new(x + 0.5, 0.0), C64::new(y, z)],
        vec![C64::new(y, -z), C64::new(-x + 0.5, 0.0)],
    ]))
}
