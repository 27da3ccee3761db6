//! Dense complex matrix kernel: Hermitian eigendecomposition, inertia,
//! Loewner comparison and spectral functional calculus.

mod hermitian;
mod matrix;
mod spectral;
mod tol;

pub use hermitian::{Eigen, Hermitian, Inertia};
pub use matrix::{principal_sqrt, CMatrix, C64, I};
pub use spectral::{
    apply_to_eigen, inv_sqrt_pd, invertibility_margin, is_invertible, loewner_compare, negative_part, pinv_psd,
    positive_part, singular_extremes, spectral_apply, spectral_norm, sqrt_psd, Domain, LoewnerOrder,
};
pub use tol::Tolerances;
