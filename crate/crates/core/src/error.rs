use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("membership violation: {0}")]
    Membership(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("map is not of canonical Möbius form (sample residual {residual:.3e})")]
    NotCanonical { residual: f64 },
    #[error("map is not a congruence-composed local order isomorphism (residual {residual:.3e})")]
    NotInModel { residual: f64 },
    #[error("no admissible path found: {0}")]
    PathConstruction(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// True for errors that mean "the operand left the domain of the map",
    /// as opposed to malformed input or bad arguments.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::DomainViolation(_) | Error::Membership(_) | Error::Singular(_) | Error::PathConstruction(_)
        )
    }
}
