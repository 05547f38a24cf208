use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the range the operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Elimination found no nonzero pivot in this column.
    #[error("singular matrix: no pivot in column {column}")]
    Singular { column: usize },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// The power-basis expansion of a constructed polynomial does not reproduce
    /// the prescribed coefficients.
    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
