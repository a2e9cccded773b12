use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("difference polynomial has no leading term (it is constant)")]
    NoLeadingTerm,

    #[error("inconsistent system: a consequence reduces to the nonzero constant {0}")]
    InconsistentSystem(String),

    #[error("completion aborted after {0} iterations without reaching a Janet basis")]
    IterationLimit(usize),

    #[error("infinitely many standard terms: {0}")]
    InfiniteResidueBasis(String),

    #[error("oracle cross-check failed: {0}")]
    VerificationFailed(String),

    #[error("degree bound {0} is too small for this normal form")]
    DegreeBoundTooSmall(usize),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("`{func}` expects {expected} arguments, got {found}")]
    Arity {
        func: String,
        expected: usize,
        found: usize,
    },

    #[error("negative shift in `{0}`; re-offset the unknown so all shifts are nonnegative (e.g. substitute f(k+1,n+1) for f(k,n))")]
    NegativeShift(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid value at `{path}`: {msg}")]
    Validation { path: String, msg: String },

    #[error("midpoint rule needs an even number of cells along {axis}, got {cells}")]
    Parity { axis: String, cells: u32 },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            msg: msg.into(),
        }
    }

    /// True for errors that come from the mathematics rather than from the input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero
                | Error::NoLeadingTerm
                | Error::InconsistentSystem(_)
                | Error::IterationLimit(_)
                | Error::InfiniteResidueBasis(_)
                | Error::DegreeBoundTooSmall(_)
                | Error::VerificationFailed(_)
        )
    }
}
