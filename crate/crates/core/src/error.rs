use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed edge-list input, with the 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The exhaustive oracles refuse graphs above the enumeration bound.
    #[error("graph has {nodes} nodes, above the enumeration bound of {bound}")]
    EnumerationBound { nodes: usize, bound: usize },

    #[error("unknown dataset or unreadable graph: {0}")]
    Dataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
