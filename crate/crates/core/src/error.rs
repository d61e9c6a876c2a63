use thiserror::Error;

use crate::perturb::SearchFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("objects live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("height undefined for unit ideal")]
    UnitIdealHeight,

    #[error("graded method requires homogeneous ideal")]
    Inhomogeneous,

    #[error("not a complex: d{slot} \u{2218} d{next} \u{2260} 0", next = slot + 1)]
    NotAComplex { slot: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("{0}")]
    OutOfScope(String),

    #[error("perturbation space is zero")]
    ZeroSpace,

    #[error("undecided beyond length {0}")]
    Undecided(usize),

    #[error("no witness found: {0}")]
    BudgetExhausted(Box<SearchFailure>),

    #[error("certificate check failed: {0}")]
    Certificate(String),
}
