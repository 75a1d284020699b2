use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input (matrix literal, braid word, algebra file).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("determinant must be positive, got {0}")]
    NonPositiveDeterminant(String),

    #[error("determinant must be 1, got {0}")]
    NotSpecialLinear(String),

    #[error("matrix is singular")]
    Singular,

    #[error("rows are linearly dependent")]
    RankDeficient,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("morphism endpoints do not match")]
    MismatchedEndpoints,

    #[error("no morphism: source subgroup is not contained in target subgroup")]
    NoMorphism,

    #[error("semidirect elements live in different ambient monoids")]
    MixedMonoids,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    /// An internal invariant failed. Never expected; reported rather than panicking.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
