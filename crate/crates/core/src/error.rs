use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Malformed or invalid norm parameters.
    #[error("configuration error: {0}")]
    Config(String),
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A chord or linear system degenerates.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A solver failed to bracket or converge.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// The operation needs a smooth strictly convex norm.
    #[error("unsupported norm: {0}")]
    Unsupported(String),
    /// A fitted object is inconsistent with its inputs.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// A polygon that was expected to close did not.
    #[error("classification error: {0}")]
    Classification(String),
}

impl GeomError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::Config(_) => "config",
            GeomError::Domain(_) => "domain",
            GeomError::Degenerate(_) => "degenerate",
            GeomError::Numerical(_) => "numerical",
            GeomError::Unsupported(_) => "unsupported",
            GeomError::Geometry(_) => "geometry",
            GeomError::Classification(_) => "classification",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
