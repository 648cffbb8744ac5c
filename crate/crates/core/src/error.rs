use thiserror::Error;

/// Errors produced by the solver, the oracle and the limit checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Airy argument is too large for the values to be represented.
    #[error("argument {z} outside the supported range |z| <= {limit}")]
    OverflowRange { z: f64, limit: f64 },

    /// An iterative or adaptive numerical procedure did not converge.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Internal cross-checks disagree (e.g. a missed root).
    #[error("consistency error: {0}")]
    Consistency(String),

    /// An independent check (oracle, limit) disagrees with the solver.
    #[error("check failed: {0}")]
    Mismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Wraps the message with the parameter value that triggered it.
    pub fn at(self, what: &str, value: f64) -> Self {
        let ctx = |m: String| format!("{what} = {value}: {m}");
        match self {
            Error::Domain(m) => Error::Domain(ctx(m)),
            Error::Numeric(m) => Error::Numeric(ctx(m)),
            Error::Consistency(m) => Error::Consistency(ctx(m)),
            Error::Mismatch(m) => Error::Mismatch(ctx(m)),
            e @ Error::OverflowRange { .. } => e,
        }
    }
}
