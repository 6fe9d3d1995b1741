use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: zero argument is not allowed")]
    ZeroArgument(&'static str),
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("central element has no image under phi; use phi_hat")]
    CentralInput,
    #[error("points {0} and {1} differ by an integral power of q")]
    PointsNotSeparated(String, String),
    #[error("inconsistent weight: {0}")]
    InconsistentWeight(String),
    #[error("weight is not quasifinite: {0}")]
    NotQuasifinite(String),
    #[error("label at degree 0 is not determined without a zero split")]
    UndeterminedZeroLabel,
    #[error("invalid argument: {0}")]
    Invalid(String),
}
