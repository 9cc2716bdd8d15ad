use thiserror::Error;

/// Errors raised by the analysis routines. Every variant is a domain error:
/// the input violates a stated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no factorization or roots")]
    ZeroPolynomial,
    #[error("division by the zero operator")]
    ZeroOperator,
    #[error("operator order {found} where {expected} is required")]
    WrongOrder { expected: String, found: usize },
    #[error("place {place} is irregular singular: {detail}")]
    Irregular { place: String, detail: String },
    #[error("not a G-operator of order 1: {0}")]
    NotOrder1G(String),
    #[error("insufficient truncation: have {have}, need {need}")]
    Truncation { have: usize, need: usize },
    #[error("repeated place {0}")]
    RepeatedPlace(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
