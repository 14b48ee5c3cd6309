use thiserror::Error;

/// Errors produced by the exact engine and the Monte Carlo harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource bound exceeded: {what} = {value} > {bound}")]
    Resource {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error(
        "out of stable range: weight {weight} exceeds rank {rank}; \
         exact formulas need n >= |lambda|, use mc-verify for a Monte Carlo estimate"
    )]
    OutOfStableRange { weight: usize, rank: usize },

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("internal consistency fault: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
