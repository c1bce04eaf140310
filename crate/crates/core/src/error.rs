use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("composition parts sum to {got}, expected {expected}")]
    CompositionMismatch { expected: u64, got: u64 },

    #[error("cannot combine sqrt({left}) with sqrt({right})")]
    DiscriminantMismatch { left: String, right: String },

    #[error("value has a nonzero surd part: {0}")]
    IrrationalResidue(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid gamma shape {0}")]
    InvalidShape(f64),

    #[error("{parts} parts exceeds the enumeration cap of {cap}")]
    TooManyParts { parts: usize, cap: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
