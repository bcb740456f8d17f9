use thiserror::Error;

/// Errors raised by parameter validation, domain checks and oracle limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: i128,
        reason: &'static str,
    },

    #[error("{operation}: n = {n} exceeds the enumeration limit {limit}")]
    SizeLimit {
        operation: &'static str,
        n: u64,
        limit: u64,
    },

    #[error("{set} is outside the domain of {map}: {reason}")]
    OutsideDomain {
        map: &'static str,
        set: String,
        reason: String,
    },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("{0} produced a negative value")]
    Negative(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, value: impl Into<i128>, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value: value.into(),
            reason,
        }
    }
}
