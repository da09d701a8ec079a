use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (bad vertex index, parameter outside a formula's domain).
    #[error("input error: {0}")]
    Input(String),

    /// A text or JSON file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A self-delimited integer could not be decoded.
    #[error("decode error at bit {position}: {msg}")]
    Decode { position: usize, msg: String },

    /// An exhaustive routine would exceed its configured size or node budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An online algorithm broke the rules of the game.
    #[error("protocol error: {0}")]
    Protocol(String),

    /// A property spec is not a non-trivial (co)hereditary property as shipped.
    #[error("property misconfiguration: {0}")]
    Misconfigured(String),

    /// A construction was asked to use a certificate that did not verify.
    #[error("unverified certificate: {0}")]
    Unverified(String),

    /// A claim a construction relies on was observed to be false.
    #[error("construction soundness violated: {0}")]
    Soundness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
