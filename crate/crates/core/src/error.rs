use thiserror::Error;

/// Errors raised by model construction, assembly and analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure in {op} on a {rows}x{cols} matrix")]
    Numeric {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("invalid subsystem model: {}", .0.join("; "))]
    Model(Vec<String>),

    #[error("premise not met: {0}")]
    Premise(String),

    #[error("independent computations disagree: {0}")]
    Consistency(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
