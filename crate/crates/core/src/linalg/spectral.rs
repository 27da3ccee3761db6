//! Functional calculus, Loewner comparison and invertibility margins.

use serde::{Deserialize, Serialize};

use super::hermitian::{Eigen, Hermitian};
use super::matrix::CMatrix;
use super::tol::Tolerances;
use crate::error::{Error, Result};

/// Where a scalar function may be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Real,
    /// Open interval; infinite endpoints allowed.
    Open { lo: f64, hi: f64 },
    /// `[0, ∞)`; eigenvalues within the psd cushion below zero are clamped to zero.
    NonNegative,
    /// Real line minus isolated poles.
    AvoidPoles(Vec<f64>),
}

impl Domain {
    fn admit(&self, lambda: f64, scale: f64, tol: &Tolerances) -> Result<f64> {
        let margin = tol.inv_margin * scale;
        let ok = match self {
            Domain::Real => true,
            Domain::Open { lo, hi } => lambda > lo + margin && lambda < hi - margin,
            Domain::NonNegative => {
                if lambda >= -tol.psd_tol * scale {
                    return Ok(lambda.max(0.0));
                }
                false
            }
            Domain::AvoidPoles(poles) => poles.iter().all(|p| (lambda - p).abs() > margin),
        };
        if ok {
            Ok(lambda)
        } else {
            Err(Error::DomainViolation(format!("eigenvalue {lambda:.6e} outside {self:?}")))
        }
    }
}

/// V·diag(f(λᵢ))·V* after checking every eigenvalue against `domain`.
pub fn spectral_apply(x: &Hermitian, f: impl Fn(f64) -> f64, domain: &Domain, tol: &Tolerances) -> Result<Hermitian> {
    apply_to_eigen(&x.eigen(), f, domain, tol)
}

pub fn apply_to_eigen(e: &Eigen, f: impl Fn(f64) -> f64, domain: &Domain, tol: &Tolerances) -> Result<Hermitian> {
    let scale = 1.0 + e.norm();
    let admitted = e.values.iter().map(|&l| domain.admit(l, scale, tol)).collect::<Result<Vec<f64>>>()?;
    let shifted = Eigen { values: admitted.iter().map(|&l| f(l)).collect(), vectors: e.vectors.clone() };
    if shifted.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::DomainViolation("function value is not finite".into()));
    }
    Ok(shifted.reconstruct(|l| l))
}

pub fn sqrt_psd(x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    spectral_apply(x, f64::sqrt, &Domain::NonNegative, tol)
}

/// X^{-1/2} for positive definite X.
pub fn inv_sqrt_pd(x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    spectral_apply(x, |l| 1.0 / l.sqrt(), &Domain::Open { lo: 0.0, hi: f64::INFINITY }, tol)
}

/// Moore–Penrose inverse of a positive semidefinite matrix: eigenvalues above
/// the psd cutoff are inverted, the rest are set to zero.
pub fn pinv_psd(x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    let e = x.eigen();
    let cut = tol.psd_tol * (1.0 + e.norm());
    if e.values.iter().any(|&l| l < -cut) {
        return Err(Error::DomainViolation("pseudo-inverse requested for a non-PSD matrix".into()));
    }
    Ok(e.reconstruct(|l| if l > cut { 1.0 / l } else { 0.0 }))
}

/// A₊ = A·χ_(0,∞)(A)
pub fn positive_part(a: &Hermitian, tol: &Tolerances) -> Hermitian {
    let e = a.eigen();
    let cut = tol.psd_tol * (1.0 + e.norm());
    e.reconstruct(|l| if l > cut { l } else { 0.0 })
}

/// A₋ = −A·χ_(−∞,0)(A)
pub fn negative_part(a: &Hermitian, tol: &Tolerances) -> Hermitian {
    let e = a.eigen();
    let cut = tol.psd_tol * (1.0 + e.norm());
    e.reconstruct(|l| if l < -cut { -l } else { 0.0 })
}

/// Outcome of comparing two Hermitian matrices in the Loewner order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoewnerOrder {
    Equal,
    /// X < Y: Y − X positive definite.
    Less,
    /// X ≤ Y with Y − X singular.
    LessEq,
    Greater,
    GreaterEq,
    Incomparable,
}

impl LoewnerOrder {
    pub fn is_leq(self) -> bool {
        matches!(self, LoewnerOrder::Equal | LoewnerOrder::Less | LoewnerOrder::LessEq)
    }

    pub fn is_geq(self) -> bool {
        matches!(self, LoewnerOrder::Equal | LoewnerOrder::Greater | LoewnerOrder::GreaterEq)
    }

    pub fn is_strict_less(self) -> bool {
        self == LoewnerOrder::Less
    }
}

/// Decides the Loewner relation between `x` and `y` from the spectrum of Y − X.
pub fn loewner_compare(x: &Hermitian, y: &Hermitian, tol: &Tolerances) -> Result<LoewnerOrder> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    let e = y.minus(x).eigen();
    let s = 1.0 + e.norm();
    let lo = e.values.first().copied().unwrap_or(0.0);
    let hi = e.values.last().copied().unwrap_or(0.0);
    let cushion = tol.psd_tol * s;
    let nonneg = lo >= -cushion;
    let nonpos = hi <= cushion;
    Ok(match (nonneg, nonpos) {
        (true, true) => LoewnerOrder::Equal,
        (true, false) if lo >= tol.inv_margin * s => LoewnerOrder::Less,
        (true, false) => LoewnerOrder::LessEq,
        (false, true) if hi <= -tol.inv_margin * s => LoewnerOrder::Greater,
        (false, true) => LoewnerOrder::GreaterEq,
        (false, false) => LoewnerOrder::Incomparable,
    })
}

/// Smallest and largest singular values, read off the Hermitian embedding
/// [[0, X], [X*, 0]].
pub fn singular_extremes(x: &CMatrix) -> Result<(f64, f64)> {
    let n = x.ensure_square()?;
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let e = Hermitian::hermitian_part(&x.jordan_wielandt()).eigen();
    // eigenvalues are ±σ; the n largest are the singular values
    let sigmas = &e.values[n..];
    Ok((sigmas[0].max(0.0), sigmas[n - 1].max(0.0)))
}

/// σ_min(X)
pub fn invertibility_margin(x: &CMatrix) -> Result<f64> {
    Ok(singular_extremes(x)?.0)
}

pub fn spectral_norm(x: &CMatrix) -> Result<f64> {
    Ok(singular_extremes(x)?.1)
}

/// σ_min(X) > inv_margin·(1 + ‖X‖₂)
pub fn is_invertible(x: &CMatrix, tol: &Tolerances) -> Result<bool> {
    let (lo, hi) = singular_extremes(x)?;
    Ok(lo > tol.inv_margin * (1.0 + hi))
}
