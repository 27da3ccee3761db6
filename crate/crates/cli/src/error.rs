use ordiso::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for bad input or usage, 3 when an operand leaves the map's domain,
    /// 1 when a map fails a structural property.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_domain() => 3,
            CliError::Core(Error::NotCanonical { .. } | Error::NotInModel { .. }) => 1,
            _ => 2,
        }
    }
}
