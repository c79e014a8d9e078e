use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),

    #[error("unknown norm `{0}`")]
    UnknownNorm(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("property `{property}` is not compatible with the {carrier} carrier: {reason}")]
    IncompatibleProperty {
        property: String,
        carrier: String,
        reason: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
