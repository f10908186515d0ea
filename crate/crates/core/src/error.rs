use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("capacity exceeded for {what}: {actual} > {limit}")]
    Capacity {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    /// An internal invariant was violated; indicates a bug rather than bad input.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("unknown vertex label {0}")]
    UnknownLabel(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns a capacity error when `actual` exceeds `limit`.
pub(crate) fn ensure_cap(what: &'static str, actual: u64, limit: u64) -> Result<()> {
    if actual > limit {
        Err(Error::Capacity {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
