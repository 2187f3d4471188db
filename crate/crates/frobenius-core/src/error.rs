//! One error type for the whole crate. Every refusal carries enough context
//! to report a actionable message without string formatting at the call site.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate vector contained a zero (domains are open subsets of the
    /// positive cone, generators must be positive).
    ZeroCoordinate,
    /// gcd of the coordinates is not 1.
    NotPrimitive,
    /// Fewer than two coordinates.
    TooFewCoordinates { got: usize },
    /// Coordinates above this limit would overflow the fixed-width exact
    /// arithmetic used by the residue graph and the classical bounds.
    CoordinateTooLarge { limit: u64 },
    /// A coordinate is below the documented minimum for the operation.
    CoordinateTooSmall { min: u64 },
    /// Input slice must be sorted nondecreasing.
    NotSorted,
    /// Mismatched dimensions between two objects.
    DimensionMismatch { expected: usize, got: usize },
    /// The operation is only defined for a specific dimension.
    UnsupportedDimension { required: &'static str, got: usize },
    /// An enumeration would visit more candidates than the caller allowed.
    BudgetExceeded { required: u128, budget: u128 },
    /// Rejection sampling gave up; the acceptance probability is too low.
    SamplingStalled { index: u64, attempts: u64 },
    /// A matrix that must be invertible is singular.
    SingularMatrix,
    /// A basis that must have determinant +-1 does not.
    NotUnimodular { det: f64 },
    /// The requested gauge is not centrally symmetric, so successive minima
    /// are not defined for it.
    AsymmetricGauge,
    /// A numeric parameter that must be strictly positive is not.
    NonPositive { name: &'static str },
    /// Tolerance below what the certification can resolve.
    ToleranceTooSmall { min: f64 },
    /// Empty input where at least one element is required.
    EmptyInput { what: &'static str },
    /// Too few records for a statistically meaningful answer.
    TooFewRecords { needed: usize, got: usize },
    /// A grid must be strictly increasing and positive.
    BadGrid { reason: &'static str },
    /// Fewer than three grid points carry positive tail mass; no slope fit.
    DegenerateTail { positive: usize },
    /// The operation needs an exhaustive ensemble, not a sampled one.
    ExhaustiveRequired,
    /// Half-space file line failed to parse.
    BadHalfspace { line: usize, reason: &'static str },
    /// Anything else with a human-readable explanation.
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroCoordinate => write!(f, "coordinates must be positive"),
            Error::NotPrimitive => write!(f, "coordinates must be coprime (gcd 1)"),
            Error::TooFewCoordinates { got } => {
                write!(f, "need at least 2 coordinates, got {}", got)
            }
            Error::CoordinateTooLarge { limit } => {
                write!(f, "coordinate exceeds supported limit {}", limit)
            }
            Error::CoordinateTooSmall { min } => {
                write!(f, "every coordinate must be >= {}", min)
            }
            Error::NotSorted => write!(f, "coordinates must be sorted nondecreasing"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            Error::UnsupportedDimension { required, got } => {
                write!(f, "operation requires {} (got dimension {})", required, got)
            }
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "enumeration needs {} candidates, budget is {}",
                required, budget
            ),
            Error::SamplingStalled { index, attempts } => write!(
                f,
                "rejection sampling stalled at index {} after {} attempts; \
                 acceptance probability too low",
                index, attempts
            ),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotUnimodular { det } => {
                write!(f, "basis must have determinant +-1, got {}", det)
            }
            Error::AsymmetricGauge => {
                write!(f, "successive minima need a centrally symmetric gauge")
            }
            Error::NonPositive { name } => write!(f, "{} must be strictly positive", name),
            Error::ToleranceTooSmall { min } => {
                write!(f, "tolerance below resolvable minimum {}", min)
            }
            Error::EmptyInput { what } => write!(f, "{} must be nonempty", what),
            Error::TooFewRecords { needed, got } => {
                write!(f, "need at least {} records, got {}", needed, got)
            }
            Error::BadGrid { reason } => write!(f, "bad grid: {}", reason),
            Error::DegenerateTail { positive } => write!(
                f,
                "tail fit needs >= 3 grid points with positive mass, got {}",
                positive
            ),
            Error::ExhaustiveRequired => {
                write!(f, "this statistic is only defined for exhaustive ensembles")
            }
            Error::BadHalfspace { line, reason } => {
                write!(f, "half-space file line {}: {}", line, reason)
            }
            Error::Invalid(msg) => write!(f, "{}", msg),
        }
    }
}

impl core::error::Error for Error {}
