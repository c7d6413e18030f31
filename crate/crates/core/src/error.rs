//! Typed failure modes. Every error here marks a mathematically meaningful
//! obstruction or an out-of-range request, never a wrong answer.

use thiserror::Error;

/// Errors from exact rational function arithmetic and integration.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExactError {
    /// A denominator reduced to zero.
    #[error("denominator is identically zero")]
    ZeroDenominator,
    /// The antiderivative is not a rational function: after Hermite
    /// reduction a nonzero residual with squarefree denominator remains,
    /// so logarithms would be required.
    #[error("integrand has a logarithmic part; no rational antiderivative")]
    LogObstruction,
    /// A series or operator coefficient below the certified floor was
    /// requested.
    #[error("coefficient at order {want} is below the certified floor {floor}")]
    Truncation { want: i64, floor: i64 },
}

/// Errors from the pseudodifferential operator layer.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OperatorError {
    /// A coefficient below the certified floor was requested.
    #[error("operator coefficient at order {want} is below the certified floor {floor}")]
    Truncation { want: i64, floor: i64 },
    /// A commutator expected to be a multiplication operator has a nonzero
    /// coefficient at a positive order.
    #[error("commutator has a nonzero coefficient at order {order}")]
    NotMultiplicationOperator { order: usize },
    /// The odd power of the square root failed one of the exact
    /// certificates for a commuting pair (vanishing tail, square identity,
    /// commutation).
    #[error("operator pair certificate failed: {0}")]
    FactorizationFailed(&'static str),
}

/// Errors from heat coefficient transport and its verifications.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HadamardError {
    /// The transport integrand has no rational antiderivative.
    #[error("transport integrand has a logarithmic part")]
    LogObstruction,
    /// The transported coefficient is singular on the diagonal x = y.
    #[error("coefficient {n} is singular on the diagonal")]
    SingularDiagonal { n: usize },
    /// Re-substitution of a computed coefficient into its transport
    /// equation left a nonzero residual.
    #[error("transport residual for coefficient {n} is nonzero")]
    ResidualNonzero { n: usize },
    /// A coefficient changed under exchanging x and y.
    #[error("coefficient {n} is not symmetric in x and y")]
    SymmetryFailed { n: usize },
    /// An exact identity between independently computed quantities failed.
    #[error("identity check failed: {0}")]
    IdentityFailed(&'static str),
}

/// Errors from wave function construction and the residue formula.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WaveError {
    /// The wave function failed its eigenfunction equation.
    #[error("wave function fails the eigenfunction check at order {order}")]
    EigenCheckFailed { order: i64 },
    /// A bilinear residue that must vanish does not.
    #[error("bilinear residue at moment {m} is nonzero")]
    ResidueNonzero { m: i64 },
    /// A requested series coefficient is below the certified floor.
    #[error("series coefficient at order {want} is below the certified floor {floor}")]
    TruncationError { want: i64, floor: i64 },
    /// The residue formula produced a value that is not a rational function
    /// of the expected shape.
    #[error("residue formula result is not rational in the expected variables")]
    NonRationalResult,
    /// A Taylor coefficient identity of the kernel series failed.
    #[error("series identity failed: {0}")]
    SeriesCheckFailed(&'static str),
}

impl From<ExactError> for HadamardError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::LogObstruction => HadamardError::LogObstruction,
            ExactError::ZeroDenominator => HadamardError::IdentityFailed("zero denominator"),
            ExactError::Truncation { .. } => HadamardError::IdentityFailed("truncated input"),
        }
    }
}

impl From<ExactError> for WaveError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Truncation { want, floor } => WaveError::TruncationError { want, floor },
            _ => WaveError::NonRationalResult,
        }
    }
}

impl From<ExactError> for OperatorError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Truncation { want, floor } => OperatorError::Truncation { want, floor },
            _ => OperatorError::FactorizationFailed("exact arithmetic failure"),
        }
    }
}
