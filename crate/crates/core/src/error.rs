use thiserror::Error;

/// Errors raised by the EFP engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EfpError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} is outside its domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("wrong regime: {0}")]
    Regime(String),

    #[error("instance too large for {method}: {detail}")]
    TooLarge { method: &'static str, detail: String },

    #[error("the Hankel matrix is empty for s = 0")]
    EmptyMatrix,

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("two evaluation paths disagree for {what}: {detail}")]
    Mismatch { what: &'static str, detail: String },

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("contour misconfigured: {0}")]
    Contour(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, EfpError>;
