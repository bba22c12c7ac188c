use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph not connected")]
    NotConnected,
    #[error("circle has no smoothing base")]
    CircleHasNoSmoothingBase,
    #[error("insufficient subdivision: {0}")]
    InsufficientSubdivision(String),
    #[error("insufficient subdivision for action")]
    ActionNeedsSubdivision,
    #[error("explicit polynomial requires a tree")]
    RequiresTree,
    #[error("no essential vertex")]
    NoEssentialVertex,
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
    #[error("not eventually polynomial")]
    NotEventuallyPolynomial,
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: usize, vertex: usize },
    #[error("{0}")]
    Refused(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
