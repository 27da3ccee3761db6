use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, C64};
use super::tol::Tolerances;
use crate::error::{Error, Result};

/// A square complex matrix equal to its adjoint.
///
/// Construction through [`Hermitian::new`] validates the Hermitian defect
/// against `herm_tol` and then stores the exact Hermitian part, so every
/// value of this type is Hermitian to the last bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermitian(CMatrix);

impl Deref for Hermitian {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

impl Hermitian {
    pub fn new(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        m.ensure_square()?;
        if !m.is_finite() {
            return Err(Error::Malformed("non-finite matrix entry".into()));
        }
        let defect = (&m - &m.adjoint()).frobenius();
        if defect > tol.herm_tol * (1.0 + m.frobenius()) {
            return Err(Error::Malformed(format!("matrix is not Hermitian (‖X − X*‖_F = {defect:.3e})")));
        }
        Ok(Self::hermitian_part(&m))
    }

    /// (M + M*)/2 for any square M.
    pub fn hermitian_part(m: &CMatrix) -> Self {
        Hermitian(m.real_part())
    }

    pub fn zeros(n: usize) -> Self {
        Hermitian(CMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Hermitian(CMatrix::identity(n))
    }

    pub fn scalar(n: usize, s: f64) -> Self {
        Hermitian(CMatrix::scalar(n, C64::new(s, 0.0)))
    }

    pub fn diag(values: &[f64]) -> Self {
        Hermitian(CMatrix::diag_real(values))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::hermitian_part(&CMatrix::from_real_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn plus(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 + &other.0)
    }

    pub fn minus(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 - &other.0)
    }

    pub fn scaled(&self, s: f64) -> Hermitian {
        Hermitian(self.0.scale(s))
    }

    pub fn negated(&self) -> Hermitian {
        Hermitian(-&self.0)
    }

    pub fn shifted(&self, s: f64) -> Hermitian {
        Hermitian(self.0.add_scalar_diag(C64::new(s, 0.0)))
    }

    /// (1 − c)·self + c·other
    pub fn lerp(&self, other: &Hermitian, c: f64) -> Hermitian {
        Hermitian(&self.0.scale(1.0 - c) + &other.0.scale(c))
    }

    /// T·X·T*
    pub fn congruence(&self, t: &CMatrix) -> Hermitian {
        Self::hermitian_part(&(&(t * &self.0) * &t.adjoint()))
    }

    /// Transpose in the standard basis (equal to the entrywise conjugate).
    pub fn transposed(&self) -> Hermitian {
        Hermitian(self.0.transpose())
    }

    pub fn principal_block(&self, start: usize, len: usize) -> Hermitian {
        Hermitian(self.0.block(start, start, len, len))
    }

    pub fn inverse(&self) -> Result<Hermitian> {
        Ok(Self::hermitian_part(&self.0.inverse()?))
    }

    pub fn eigen(&self) -> Eigen {
        jacobi_eigen(&self.0)
    }

    pub fn spectral_norm(&self) -> f64 {
        let e = self.eigen();
        e.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().values.first().copied().unwrap_or(0.0)
    }

    pub fn inertia(&self, tol: &Tolerances) -> Inertia {
        self.eigen().inertia(tol)
    }
}

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// V·diag(g(λ))·V*
    pub fn reconstruct(&self, g: impl Fn(f64) -> f64) -> Hermitian {
        let n = self.dim();
        let v = &self.vectors;
        let gv: Vec<f64> = self.values.iter().map(|&l| g(l)).collect();
        let m = CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * gv[k]).sum());
        Hermitian::hermitian_part(&m)
    }

    /// V·diag(g(λ))·V* for complex-valued g.
    pub fn reconstruct_complex(&self, g: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let gv: Vec<C64> = self.values.iter().map(|&l| g(l)).collect();
        CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * gv[k]).sum())
    }

    pub fn inertia(&self, tol: &Tolerances) -> Inertia {
        let cut = tol.psd_tol * (1.0 + self.norm());
        let mut out = Inertia::default();
        for &l in &self.values {
            if l > cut {
                out.pos += 1;
            } else if l < -cut {
                out.neg += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }

    /// Indices of eigenvalues outside the psd_tol cutoff band around 0.
    pub fn support(&self, tol: &Tolerances) -> Vec<usize> {
        let cut = tol.psd_tol * (1.0 + self.norm());
        (0..self.dim()).filter(|&k| self.values[k].abs() > cut).collect()
    }
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inertia {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
}

impl Inertia {
    pub fn new(pos: usize, zero: usize, neg: usize) -> Self {
        Inertia { pos, zero, neg }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.zero + self.neg
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.zero, self.neg)
    }
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot entry, then applies the classical real rotation.
fn jacobi_eigen(h: &CMatrix) -> Eigen {
    let n = h.rows();
    let mut a = h.real_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius();
    if n > 1 && scale > 0.0 {
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let hpq = a[(p, q)];
                    let g = hpq.norm();
                    if g == 0.0 {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let phase = hpq / g;
                    let theta = (aqq - app) / (2.0 * g);
                    let t = if theta == 0.0 {
                        1.0
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
                    let g00 = C64::new(c, 0.0);
                    let g01 = C64::new(s, 0.0);
                    let g10 = -phase.conj() * s;
                    let g11 = phase.conj() * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * g00 + akq * g10;
                        a[(k, q)] = akp * g01 + akq * g11;
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * g00 + vkq * g10;
                        v[(k, q)] = vkp * g01 + vkq * g11;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
                        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
                    }
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Eigen { values: order.iter().map(|&i| a[(i, i)].re).collect(), vectors: v.select_columns(&order) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::I;

    #[test]
    fn diagonal_eigenvalues_sorted_with_permutation_vectors() {
        let x = Hermitian::diag(&[3.0, 1.0, 2.0]);
        let e = x.eigen();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        for (col, row) in [(0, 1), (1, 2), (2, 0)] {
            assert!((e.vectors[(row, col)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn swap_matrix_has_eigenvalues_plus_minus_one() {
        let x = Hermitian::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = x.eigen();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_two_by_two_matches_characteristic_roots() {
        // [[1, 2i], [-2i, 4]]: trace 5, det 4 - 4 = 0 → roots 0 and 5
        let m = CMatrix::from_rows(&[vec![C64::new(1.0, 0.0), 2.0 * I], vec![-2.0 * I, C64::new(4.0, 0.0)]]);
        let e = Hermitian::new(m, &Tolerances::default()).unwrap().eigen();
        assert!(e.values[0].abs() < 1e-14);
        assert!((e.values[1] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(Hermitian::new(m, &Tolerances::default()), Err(Error::Malformed(_))));
    }

    #[test]
    fn inertia_examples() {
        let tol = Tolerances::default();
        assert_eq!(Hermitian::identity(4).inertia(&tol), Inertia::new(4, 0, 0));
        assert_eq!(Hermitian::zeros(3).inertia(&tol), Inertia::new(0, 3, 0));
        assert_eq!(Hermitian::diag(&[2.0, -1.0, 0.0]).inertia(&tol), Inertia::new(1, 1, 1));
    }
}
