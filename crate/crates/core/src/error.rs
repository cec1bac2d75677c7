use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The inputs do not describe a valid object (non-coprime parameters,
    /// out-of-range weights, odd weights where an even one is required, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Two evaluation routes that must agree did not, or a quantity that must
    /// be integral was not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
