use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("denominator too close to zero")]
    Singular,
    #[error("argument outside the domain: {0}")]
    Domain(&'static str),
    #[error("size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("no such representation: {0}")]
    Unavailable(&'static str),
    #[error("auxiliary parameters invalid: {0}")]
    AuxInvalid(&'static str),
    #[error("general-position sampling gave up after {0} attempts")]
    ResampleCap(usize),
}

pub type Result<T> = core::result::Result<T, EvalError>;
