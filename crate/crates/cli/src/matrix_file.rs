//! JSON matrix files: `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`.
//!
//! Entries are written with 17 significant digits so every `f64` reads back
//! bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use ordiso::linalg::{CMatrix, Hermitian, Tolerances, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let data = (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        MatrixFile { rows: m.rows(), cols: m.cols(), data }
    }

    /// Checks shape and finiteness.
    pub fn validate(&self) -> Result<(), String> {
        if self.data.len() != self.rows {
            return Err(format!("`rows` is {} but data has {} rows", self.rows, self.data.len()));
        }
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                return Err(format!("row {i} has {} entries, expected {}", row.len(), self.cols));
            }
            if let Some(j) = row.iter().position(|e| !e[0].is_finite() || !e[1].is_finite()) {
                return Err(format!("entry ({i}, {j}) is not finite"));
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> CMatrix {
        let rows: Vec<Vec<C64>> = self.data.iter().map(|r| r.iter().map(|e| C64::new(e[0], e[1])).collect()).collect();
        if self.rows == 0 || self.cols == 0 {
            return CMatrix::zeros(self.rows, self.cols);
        }
        CMatrix::from_rows(&rows)
    }
}

fn number(out: &mut String, x: f64) {
    // `{:e}` gives e.g. `1.5000000000000000e-3`, which is valid JSON
    let _ = write!(out, "{x:.16e}");
}

/// Serializes with one matrix row per line.
pub fn to_string(m: &CMatrix) -> String {
    let mut s = format!("{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": [", m.rows(), m.cols());
    for i in 0..m.rows() {
        s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        for j in 0..m.cols() {
            if j > 0 {
                s.push_str(", ");
            }
            s.push('[');
            number(&mut s, m[(i, j)].re);
            s.push_str(", ");
            number(&mut s, m[(i, j)].im);
            s.push(']');
        }
        s.push(']');
    }
    s.push_str(if m.rows() == 0 { "]\n}\n" } else { "\n  ]\n}\n" });
    s
}

/// Parses matrix file text; `origin` names the source in error messages.
pub fn parse_str(text: &str, origin: &str) -> Result<CMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            full.strip_suffix(&suffix).unwrap_or(&full).to_string()
        },
    })?;
    file.validate().map_err(|message| CliError::Parse { origin: origin.to_string(), line: 0, column: 0, message })?;
    Ok(file.to_matrix())
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text, &path.display().to_string())
}

/// Reads a matrix and checks that it is square and Hermitian within `herm_tol`.
pub fn read_hermitian(path: &Path, tol: &Tolerances) -> Result<Hermitian, CliError> {
    let m = read_matrix(path)?;
    Hermitian::new(m, tol).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<(), CliError> {
    std::fs::write(path, to_string(m)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
