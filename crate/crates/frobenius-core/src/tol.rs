//! Every numeric tolerance used anywhere in the crate, in one place.
//!
//! Each constant says what comparison it guards and why the value is safe.
//! Code must not introduce ad-hoc epsilons; tests assert against these.

/// Determinant check for bases that must be unimodular. The determinant of
/// the normalized lattices is exact rational arithmetic times an exact root,
/// so the only error is the final f64 rounding; 1e-9 is eight orders above it.
pub const UNIMODULAR_DET: f64 = 1e-9;

/// Determinant-one check for group elements, which are plain f64 matrices.
/// An LU determinant of a well-conditioned matrix of size <= 10 is accurate
/// to a few ulps; 1e-12 leaves margin while still catching real mistakes.
pub const GROUP_DET: f64 = 1e-12;

/// Default entry tolerance when deciding whether a change-of-basis matrix is
/// integral from floating-point data. Exact-rational inputs never use this.
pub const LATTICE_EQ: f64 = 1e-9;

/// Closed-form gauge evaluations are compared against the exact
/// linear-programming membership oracle within this bound.
pub const GAUGE_ORACLE: f64 = 1e-9;

/// Slack on the Minkowski second theorem sandwich
/// 2^(d-1)/(d-1)! <= vol(K) lambda_1...lambda_{d-1} <= 2^(d-1).
/// The minima are exact values rounded once to f64, so violations beyond
/// 1e-6 are real.
pub const MINKOWSKI_SLACK: f64 = 1e-6;

/// Slack on lambda_{d-1} <= Q <= lambda_1 + ... + lambda_{d-1}. Both sides
/// are certified quantities; the slack only absorbs f64 rounding of exact
/// brackets, and equality cases (they occur) sit exactly on the edge.
pub const COVERING_SANDWICH_SLACK: f64 = 1e-9;

/// Default certification half-width for the planar covering radius.
pub const PLANAR_DEFAULT: f64 = 1e-7;

/// Smallest accepted planar tolerance: below this the rational bisection
/// still works but the f64 report of the bracket could no longer express it.
pub const PLANAR_MIN: f64 = 1e-12;

/// Default residual bound for the identity between the normalized Frobenius
/// statistic and the planar covering radius. The planar side is certified to
/// a tenth of this.
pub const IDENTITY_RESIDUAL: f64 = 1e-6;

/// Requested accuracy of zeta(d); the partial sum is stopped when the
/// integral tail bracket is narrower than this.
pub const ZETA_EPS: f64 = 1e-13;

/// Relative fuzz applied outward when turning f64 minima into the rational
/// bisection bracket, and inward when accepting enumerated vectors at the
/// gauge threshold.
pub const ENUM_FUZZ: f64 = 1e-9;
