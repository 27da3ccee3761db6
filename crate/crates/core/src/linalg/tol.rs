use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical cushions used by every membership and order test.
///
/// The Loewner order and invertibility are exact notions; in floating point
/// they are decided relative to the scale `1 + ‖X‖₂` of the operand.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed `‖X − X*‖_F / (1 + ‖X‖_F)` for a matrix accepted as Hermitian.
    pub herm_tol: f64,
    /// Eigen-decomposition residual and unitarity budget.
    pub eig_tol: f64,
    /// Relative cushion for the sign of an eigenvalue.
    pub psd_tol: f64,
    /// Relative margin for "invertible" / "strictly positive".
    pub inv_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { herm_tol: 1e-10, eig_tol: 1e-10, psd_tol: 1e-8, inv_margin: 1e-8 }
    }
}

impl Tolerances {
    pub fn validate(self) -> Result<Self> {
        for (name, v) in self.fields() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        Ok(self)
    }

    fn fields(&self) -> [(&'static str, f64); 4] {
        [
            ("herm_tol", self.herm_tol),
            ("eig_tol", self.eig_tol),
            ("psd_tol", self.psd_tol),
            ("inv_margin", self.inv_margin),
        ]
    }

    /// Applies a `key=value` list separated by commas or whitespace,
    /// e.g. `psd_tol=1e-9, inv_margin=1e-7`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("tolerance override `{item}` is not key=value")))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("tolerance value `{value}` is not a number")))?;
            match key.trim() {
                "herm_tol" => self.herm_tol = v,
                "eig_tol" => self.eig_tol = v,
                "psd_tol" => self.psd_tol = v,
                "inv_margin" => self.inv_margin = v,
                other => return Err(Error::InvalidArgument(format!("unknown tolerance key `{other}`"))),
            }
        }
        self.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let t = Tolerances::default().with_overrides("psd_tol=1e-9, inv_margin=2e-7").unwrap();
        assert_eq!(t.psd_tol, 1e-9);
        assert_eq!(t.inv_margin, 2e-7);
        assert_eq!(t.herm_tol, 1e-10);
    }

    #[test]
    fn overrides_reject_garbage() {
        assert!(Tolerances::default().with_overrides("psd_tol").is_err());
        assert!(Tolerances::default().with_overrides("foo=1").is_err());
        assert!(Tolerances::default().with_overrides("psd_tol=-1").is_err());
    }
}
