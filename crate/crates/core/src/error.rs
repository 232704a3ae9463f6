use thiserror::Error;

/// Errors raised by the solvers and simulators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("no sign change found for {what} at t = {t} below x = {cap}")]
    Bracket { what: &'static str, t: f64, cap: f64 },
    #[error("a boundary curve is required in the boundary regime")]
    MissingCurve,
    #[error("resource error: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
