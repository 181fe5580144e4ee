use thiserror::Error;

/// Crate-wide error type. `Usage` marks caller mistakes, `Validation`
/// rejected surface data, `Consistency` results that signal bad inputs
/// (for example a charge in the forbidden half-plane).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("singular linear system")]
    Singular,
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
