use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// The CLI maps [`Error::CapExceeded`] to exit code 3, [`Error::Usage`],
/// [`Error::Parse`] and I/O problems to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sigma_{k} is not an automorphism of Q(zeta_{conductor})")]
    InvalidAutomorphism { k: i64, conductor: u32 },
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not a Coxeter-like pair: {0}")]
    NotCoxeterLike(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("{0}")]
    Usage(String),
    #[error("no regular element of order {0}")]
    NoRegularElement(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
