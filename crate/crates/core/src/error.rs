use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },
    #[error("{what} exceeds cap: {value} > {cap}")]
    Cap { what: &'static str, value: u128, cap: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("time budget of {0}s exhausted")]
    Budget(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Range { what, detail: detail.into() }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn cap(what: &'static str, value: impl TryInto<u128>, cap: impl TryInto<u128>) -> Error {
    Error::Cap {
        what,
        value: value.try_into().unwrap_or(u128::MAX),
        cap: cap.try_into().unwrap_or(u128::MAX),
    }
}
