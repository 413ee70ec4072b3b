use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operands that do not belong together (different fields, ambient spaces, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Unsupported parameters such as a field size with no table entry.
    #[error("configuration error: {0}")]
    Config(String),

    /// A form that was required to be non-degenerate has a radical.
    #[error("degenerate form: radical has vector dimension {radical_dim}")]
    Degenerate { radical_dim: usize },

    /// A built object failed one of its own defining checks.
    #[error("construction error: {0}")]
    Construction(String),

    /// An enumeration did not match its closed-form count.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("scale cap exceeded: {0}")]
    ScaleCap(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
