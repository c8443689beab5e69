use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bounded search ran out of budget before finding its answer.
    #[error("{what}: search cap {cap} exhausted")]
    CapExhausted { what: String, cap: u128 },

    /// An integer is too large for the deterministic primality guarantee.
    #[error("{0} exceeds the deterministic primality bound")]
    MagnitudeExceeded(String),

    /// Elements from two different fields were combined.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// A group is larger than the configured brute-force cap.
    #[error("group of order {size} exceeds the size cap {cap}")]
    GroupTooLarge { size: usize, cap: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, cap: impl Into<u128>) -> Self {
        Error::CapExhausted {
            what: what.into(),
            cap: cap.into(),
        }
    }

    /// True for errors caused by a configurable budget rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExhausted { .. } | Error::GroupTooLarge { .. } | Error::MagnitudeExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
