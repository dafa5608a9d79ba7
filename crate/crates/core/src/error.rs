use thiserror::Error;

/// Errors raised by the finite-space toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the empty space is not supported")]
    Empty,
    #[error("cover relation contains a directed cycle through element {0}")]
    Cycle(usize),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("element {index} out of range for a space with {n} points")]
    Index { index: usize, n: usize },
    #[error("cannot remove the last remaining point")]
    LastPoint,
    #[error("space is not connected")]
    NotConnected,
    #[error("quotient is not T0: {0}")]
    QuotientNotT0(String),
    #[error("map is not continuous: {0} <= {1} but their images are not ordered")]
    NotContinuous(usize, usize),
    #[error("map has {got} entries, expected {expected}")]
    MapArity { got: usize, expected: usize },
    #[error("ill-formed path: {0}")]
    IllFormedPath(String),
    #[error("ill-formed closeness move: {0}")]
    IllFormedMove(String),
    #[error("{requested} points exceeds the enumeration cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
