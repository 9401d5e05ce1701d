use thiserror::Error;

use crate::lattice::LatticePoint;

/// Rejections raised while validating a candidate minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("period must be positive, got {0}")]
    InvalidPeriod(i64),
    #[error("DuplicateFirstCoordinate: {0} appears more than once")]
    DuplicateFirstCoordinate(i64),
    #[error("DuplicateSecondCoordinate: {0} appears more than once")]
    DuplicateSecondCoordinate(i64),
    #[error("ZeroOrNegativeCoordinate: {0}")]
    ZeroOrNegativeCoordinate(LatticePoint),
    #[error("CoordinateDivisibleByPeriod: {point} has a coordinate divisible by {period}")]
    CoordinateDivisibleByPeriod { point: LatticePoint, period: i64 },
    #[error("CoordinateExceedsGapBound: {point} has a coordinate above 2g-1 = {bound}")]
    CoordinateExceedsGapBound { point: LatticePoint, bound: i64 },
    #[error("PeriodPropertyViolation: beta = {beta}, k = {k}")]
    PeriodPropertyViolation { beta: i64, k: i64 },
    #[error("Overflow: coordinate arithmetic left the 64-bit range")]
    Overflow,
}

impl ValidationError {
    /// First coordinate of the point the error is about, when there is one.
    pub fn offending_beta(&self) -> Option<i64> {
        match self {
            ValidationError::DuplicateFirstCoordinate(b) => Some(*b),
            ValidationError::ZeroOrNegativeCoordinate(p)
            | ValidationError::CoordinateDivisibleByPeriod { point: p, .. }
            | ValidationError::CoordinateExceedsGapBound { point: p, .. } => Some(p.a()),
            ValidationError::PeriodPropertyViolation { beta, .. } => Some(*beta),
            _ => None,
        }
    }

    /// Variant name, used for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::InvalidPeriod(_) => "InvalidPeriod",
            ValidationError::DuplicateFirstCoordinate(_) => "DuplicateFirstCoordinate",
            ValidationError::DuplicateSecondCoordinate(_) => "DuplicateSecondCoordinate",
            ValidationError::ZeroOrNegativeCoordinate(_) => "ZeroOrNegativeCoordinate",
            ValidationError::CoordinateDivisibleByPeriod { .. } => "CoordinateDivisibleByPeriod",
            ValidationError::CoordinateExceedsGapBound { .. } => "CoordinateExceedsGapBound",
            ValidationError::PeriodPropertyViolation { .. } => "PeriodPropertyViolation",
            ValidationError::Overflow => "Overflow",
        }
    }
}

/// Errors from the gap engine and the family generators.
///
/// Everything except [`Error::InvalidParams`], [`Error::IndexOutOfRange`],
/// [`Error::Validation`] and [`Error::Overflow`] is an internal consistency
/// failure: two independent routes to the same quantity disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("Overflow: {0}")]
    Overflow(&'static str),

    #[error("GenusIdentityViolation: sum (k+1)|row k| = {sum}, genus = {genus}")]
    GenusIdentityViolation { sum: i128, genus: usize },
    #[error("CardinalityMismatch in {what}: {left} != {right}")]
    CardinalityMismatch { what: String, left: i128, right: i128 },
    #[error("DiagonalReflectionMismatch at k = {k}")]
    DiagonalReflectionMismatch { k: usize },
    #[error("DisjointnessViolation: {0}")]
    DisjointnessViolation(String),
    #[error("PiecewiseMismatch at k = {k}: explicit {explicit}, piecewise {piecewise}")]
    PiecewiseMismatch { k: usize, explicit: i64, piecewise: i64 },
    #[error("GenericMismatch: {0}")]
    GenericMismatch(String),
    #[error("ClosedFormMismatch: {what}: closed form {closed_form}, enumeration {enumerated}")]
    ClosedFormMismatch { what: String, closed_form: i128, enumerated: i128 },
    #[error("DivisibilityViolation: {0}")]
    DivisibilityViolation(String),
}

impl Error {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(
            self,
            Error::InvalidParams(_) | Error::IndexOutOfRange(_) | Error::Validation(_) | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
