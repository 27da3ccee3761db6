//! Seeded random instance generation.
//!
//! Every trial gets its own ChaCha stream derived from `(seed, trial)`, so a
//! suite produces the same instances whether its trials run sequentially or
//! in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, Hermitian, C64};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Sampler { rng }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// i.i.d. standard complex Gaussian entries.
    pub fn complex(&mut self, n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| self.complex_normal())
    }

    /// Gaussian entries symmetrized: (Z + Z*)/2.
    pub fn hermitian(&mut self, n: usize) -> Hermitian {
        Hermitian::hermitian_part(&self.complex(n))
    }

    /// W·W*/n, rank `rank`.
    pub fn psd(&mut self, n: usize, rank: usize) -> Hermitian {
        let w = CMatrix::from_fn(n, rank, |_, _| self.complex_normal());
        Hermitian::hermitian_part(&(&w * &w.adjoint()).scale(1.0 / n.max(1) as f64))
    }

    /// Positive definite with eigenvalues in [lo, hi].
    pub fn pd(&mut self, n: usize, lo: f64, hi: f64) -> Hermitian {
        let u = self.unitary(n);
        let vals: Vec<f64> = (0..n).map(|_| self.uniform(lo, hi)).collect();
        Hermitian::diag(&vals).congruence(&u)
    }

    /// Eigenvectors of a random Hermitian matrix.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        self.hermitian(n).eigen().vectors
    }

    /// Effect: spectrum uniform in [0, 1].
    pub fn effect(&mut self, n: usize) -> Hermitian {
        let u = self.unitary(n);
        let vals: Vec<f64> = (0..n).map(|_| self.uniform(0.0, 1.0)).collect();
        Hermitian::diag(&vals).congruence(&u)
    }

    /// Hermitian with prescribed spectrum in a random eigenbasis.
    pub fn with_spectrum(&mut self, vals: &[f64]) -> Hermitian {
        let u = self.unitary(vals.len());
        Hermitian::diag(vals).congruence(&u)
    }

    /// X + iY with X Gaussian Hermitian and Y positive definite (eigenvalues in [0.2, 2]).
    pub fn half_plane(&mut self, n: usize) -> CMatrix {
        let x = self.hermitian(n);
        let y = self.pd(n, 0.2, 2.0);
        x.as_matrix() + &y.as_matrix().scale_c(crate::linalg::I)
    }

    /// Strict contraction with ‖Y‖₂ ≤ `radius` < 1.
    pub fn contraction(&mut self, n: usize, radius: f64) -> CMatrix {
        let u = self.unitary(n);
        let v = self.unitary(n);
        let s: Vec<f64> = (0..n).map(|_| self.uniform(0.0, radius)).collect();
        &(&u * &CMatrix::diag_real(&s)) * &v
    }

    /// Invertible matrix with singular values in [lo, hi].
    pub fn invertible(&mut self, n: usize, lo: f64, hi: f64) -> CMatrix {
        let u = self.unitary(n);
        let v = self.unitary(n);
        let s: Vec<f64> = (0..n).map(|_| self.uniform(lo, hi)).collect();
        &(&u * &CMatrix::diag_real(&s)) * &v
    }

    /// Random rank-one orthogonal projection.
    pub fn rank_one_projection(&mut self, n: usize) -> Hermitian {
        let v: Vec<C64> = (0..n).map(|_| self.complex_normal()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Hermitian::hermitian_part(&CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj() / (norm * norm)))
    }

    /// Hermitian with a guaranteed non-real entry, so X ≠ Xᵗ.
    pub fn genuinely_complex_hermitian(&mut self, n: usize) -> Hermitian {
        loop {
            let h = self.hermitian(n);
            if n < 2 || (&h.transposed().into_matrix() - h.as_matrix()).max_abs() > 0.1 {
                return h;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let a = Sampler::for_trial(7, 3).hermitian(3);
        let b = Sampler::for_trial(7, 3).hermitian(3);
        let c = Sampler::for_trial(7, 4).hermitian(3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn effect_spectrum_in_unit_interval() {
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            let e = s.effect(4).eigen();
            assert!(e.values[0] > -1e-12 && e.values[3] < 1.0 + 1e-12);
        }
    }
}
