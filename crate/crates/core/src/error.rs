use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration guard was hit; `guard` names the config key.
    #[error("resource guard `{guard}` exceeded: requested {requested}, limit {limit}")]
    Resource {
        guard: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("{bijection}: input is outside the domain (contains pattern {pattern})")]
    DomainViolation { bijection: String, pattern: String },

    #[error("series is not invertible: constant term {0} is not a nonzero rational")]
    NonInvertible(String),

    #[error("inexact division at x^{power}: {detail}")]
    InexactDivision { power: usize, detail: String },

    #[error("composition diverges: substitute for the series variable has constant term {0}")]
    CompositionDivergence(String),

    #[error("fixed-point iteration for {id} did not stabilize through order {order}")]
    Divergence { id: String, order: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
