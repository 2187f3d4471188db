//! Star-shaped open domains inside the open unit cube, and the primitive
//! integer vectors found in their dilation by a real factor `t`.
//!
//! A point here is always a primitive vector: strictly positive integer
//! coordinates with gcd 1. Membership in the built-in domains is decided by
//! exact integer comparison, so dilation boundaries never depend on float
//! luck; custom half-space domains evaluate in f64 and document that caveat.
//!
//! The number of primitive points in `t * D` grows like
//! `t^d vol(D) / zeta(d)`; `count_primitive` reports the ratio against that
//! prediction and `sample_primitive` draws uniform points by per-index
//! rejection so that sample i is reproducible regardless of evaluation order.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
// Required for no_std float math; tests link std whose inherent
// methods shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::{is_sorted_nondecreasing, slice_gcd, zeta};

/// A strictly positive integer vector with gcd 1, in the caller's coordinate
/// order (enumeration order is lexicographic in these coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitivePoint {
    coords: Vec<u64>,
}

impl PrimitivePoint {
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::TooFewCoordinates { got: coords.len() });
        }
        if coords.iter().any(|&c| c == 0) {
            return Err(Error::ZeroCoordinate);
        }
        if slice_gcd(&coords) != 1 {
            return Err(Error::NotPrimitive);
        }
        Ok(PrimitivePoint { coords })
    }

    /// Enumeration/sampling already verified positivity and the gcd.
    pub(crate) fn new_prechecked(coords: Vec<u64>) -> Self {
        debug_assert!(coords.len() >= 2);
        debug_assert!(coords.iter().all(|&c| c > 0));
        debug_assert_eq!(slice_gcd(&coords), 1);
        PrimitivePoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    /// Coordinates in nondecreasing order (the canonical order used by the
    /// lattice constructions, which need the largest coordinate last).
    pub fn sorted_coords(&self) -> Vec<u64> {
        let mut v = self.coords.clone();
        v.sort_unstable();
        v
    }

    pub fn is_sorted(&self) -> bool {
        is_sorted_nondecreasing(&self.coords)
    }

    pub fn min(&self) -> u64 {
        *self.coords.iter().min().expect("nonempty")
    }

    pub fn max(&self) -> u64 {
        *self.coords.iter().max().expect("nonempty")
    }

    pub fn sum(&self) -> u128 {
        self.coords.iter().map(|&c| c as u128).sum()
    }

    pub fn product(&self) -> BigUint {
        let mut p = BigUint::one();
        for &c in &self.coords {
            p *= BigUint::from(c);
        }
        p
    }
}

/// Half-space `c[0] + c[1] x_1 + ... + c[d] x_d > 0`.
pub type HalfSpace = Vec<f64>;

/// An open domain contained in the open unit cube (0,1)^d.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// The open unit cube itself, volume 1.
    UnitCube { dim: usize },
    /// `{ 0 < x_i < x_d < 1 }`: the last coordinate dominates. Volume 1/d.
    /// Dilations of this wedge produce vectors whose largest coordinate is
    /// the last one, which is the sorted form the lattice constructions use.
    DominantLast { dim: usize },
    /// Intersection of the open unit cube with strict half-spaces; the
    /// volume cannot be derived cheaply so the caller supplies it.
    Custom {
        dim: usize,
        halfspaces: Vec<HalfSpace>,
        volume: f64,
    },
}

/// Gives up on a single sample index after this many rejections; at that
/// point the acceptance probability is below ~1e-4 with overwhelming odds
/// and the caller almost surely passed a degenerate domain.
pub const SAMPLE_ATTEMPT_CAP: u64 = 100_000;

/// Default cap on how many integer candidates an exhaustive sweep may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 200_000_000;

impl Domain {
    pub fn unit_cube(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::TooFewCoordinates { got: dim });
        }
        Ok(Domain::UnitCube { dim })
    }

    pub fn dominant_last(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::TooFewCoordinates { got: dim });
        }
        Ok(Domain::DominantLast { dim })
    }

    pub fn custom(dim: usize, halfspaces: Vec<HalfSpace>, volume: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::TooFewCoordinates { got: dim });
        }
        if !(volume > 0.0 && volume <= 1.0) {
            return Err(Error::NonPositive {
                name: "custom domain volume (must be in (0,1])",
            });
        }
        for (i, h) in halfspaces.iter().enumerate() {
            if h.len() != dim + 1 {
                return Err(Error::BadHalfspace {
                    line: i + 1,
                    reason: "expected dim+1 coefficients",
                });
            }
            if h.iter().any(|c| !c.is_finite()) {
                return Err(Error::BadHalfspace {
                    line: i + 1,
                    reason: "coefficients must be finite",
                });
            }
        }
        Ok(Domain::Custom {
            dim,
            halfspaces,
            volume,
        })
    }

    /// Parse the half-space list format: one inequality per line given as
    /// the d+1 whitespace-separated coefficients `c0 c1 ... cd` of
    /// `c0 + c1 x1 + ... + cd xd > 0`. Blank lines and `#` comments allowed.
    pub fn parse_halfspaces(text: &str, dim: usize) -> Result<Vec<HalfSpace>> {
        let mut out = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut coeffs = Vec::with_capacity(dim + 1);
            for tok in line.split_whitespace() {
                match tok.parse::<f64>() {
                    Ok(v) if v.is_finite() => coeffs.push(v),
                    _ => {
                        return Err(Error::BadHalfspace {
                            line: lineno + 1,
                            reason: "token is not a finite number",
                        })
                    }
                }
            }
            if coeffs.len() != dim + 1 {
                return Err(Error::BadHalfspace {
                    line: lineno + 1,
                    reason: "expected dim+1 coefficients",
                });
            }
            out.push(coeffs);
        }
        if out.is_empty() {
            return Err(Error::EmptyInput {
                what: "half-space list",
            });
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::UnitCube { dim } => *dim,
            Domain::DominantLast { dim } => *dim,
            Domain::Custom { dim, .. } => *dim,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Domain::UnitCube { .. } => 1.0,
            Domain::DominantLast { dim } => 1.0 / *dim as f64,
            Domain::Custom { volume, .. } => *volume,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::UnitCube { .. } => "cube",
            Domain::DominantLast { .. } => "d0",
            Domain::Custom { .. } => "custom",
        }
    }

    /// Open membership of a real point.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        if x.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
            return false;
        }
        match self {
            Domain::UnitCube { .. } => true,
            Domain::DominantLast { dim } => {
                let xd = x[*dim - 1];
                x[..*dim - 1].iter().all(|&v| v < xd)
            }
            Domain::Custom { halfspaces, .. } => halfspaces.iter().all(|h| {
                let mut s = h[0];
                for (c, v) in h[1..].iter().zip(x) {
                    s += c * v;
                }
                s > 0.0
            }),
        }
    }

    /// Membership of the integer vector `a` in `t * D`. Exact for the
    /// built-in domains (integer comparisons; integers below 2^53 compare
    /// exactly against the f64 dilation factor). Custom domains divide
    /// through by `t` and evaluate in f64.
    pub fn contains_scaled(&self, a: &[u64], t: f64) -> bool {
        if a.len() != self.dim() || a.iter().any(|&c| c == 0) {
            return false;
        }
        match self {
            Domain::UnitCube { .. } => a.iter().all(|&c| (c as f64) < t),
            Domain::DominantLast { dim } => {
                let ad = a[*dim - 1];
                ((ad as f64) < t) && a[..*dim - 1].iter().all(|&c| c < ad)
            }
            Domain::Custom { .. } => {
                let x: Vec<f64> = a.iter().map(|&c| c as f64 / t).collect();
                self.contains(&x)
            }
        }
    }

    /// Axis-aligned bounding box of the domain as (lower, upper) corners.
    /// All built-ins are bounded by the unit cube.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        (vec![0.0; self.dim()], vec![1.0; self.dim()])
    }

    /// Largest integer coordinate value a point of `t * D` can have.
    pub fn coord_upper(&self, t: f64) -> u64 {
        strictly_below(t)
    }

    /// Number of integer candidates an exhaustive sweep must visit.
    pub fn candidate_count(&self, t: f64) -> u128 {
        let hi = strictly_below(t) as u128;
        let mut p: u128 = 1;
        for _ in 0..self.dim() {
            p = p.saturating_mul(hi);
        }
        p
    }

    /// All primitive points of `t * D` with every coordinate >= `min_coord`,
    /// in lexicographic coordinate order. Refuses when the candidate box
    /// exceeds `budget`.
    pub fn enumerate_primitive(
        &self,
        t: f64,
        min_coord: u64,
        budget: u64,
    ) -> Result<Vec<PrimitivePoint>> {
        check_t(t)?;
        let required = self.candidate_count(t);
        if required > budget as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget as u128,
            });
        }
        let mut out = Vec::new();
        let hi = strictly_below(t);
        for first in 1..=hi {
            self.collect_with_first(t, min_coord, first, &mut out);
        }
        Ok(out)
    }

    /// The slice of `enumerate_primitive` whose first coordinate equals
    /// `first`. Concatenating slices for first = 1..=coord_upper(t)
    /// reproduces the full lexicographic enumeration; this is the seam
    /// parallel drivers split on.
    pub fn enumerate_primitive_with_first(
        &self,
        t: f64,
        min_coord: u64,
        first: u64,
    ) -> Result<Vec<PrimitivePoint>> {
        check_t(t)?;
        let mut out = Vec::new();
        if first >= 1 && first <= strictly_below(t) {
            self.collect_with_first(t, min_coord, first, &mut out);
        }
        Ok(out)
    }

    fn collect_with_first(&self, t: f64, min_coord: u64, first: u64, out: &mut Vec<PrimitivePoint>) {
        let d = self.dim();
        let hi = strictly_below(t);
        if first < min_coord {
            return;
        }
        let mut cur = vec![1u64; d];
        cur[0] = first;
        for c in cur.iter_mut().skip(1) {
            *c = 1;
        }
        // Odometer over coordinates 1..d, last coordinate fastest, so the
        // overall order is lexicographic.
        'outer: loop {
            if cur[1..].iter().all(|&c| c >= min_coord)
                && self.contains_scaled(&cur, t)
                && slice_gcd(&cur) == 1
            {
                out.push(PrimitivePoint::new_prechecked(cur.clone()));
            }
            let mut i = d - 1;
            loop {
                if i == 0 {
                    break 'outer;
                }
                if cur[i] < hi {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
                i -= 1;
            }
        }
    }

    /// Count of `enumerate_primitive` plus the ratio of that count to the
    /// leading-order prediction `t^d vol(D) / zeta(d)`.
    pub fn count_primitive(&self, t: f64, min_coord: u64, budget: u64) -> Result<(u64, f64)> {
        check_t(t)?;
        let required = self.candidate_count(t);
        if required > budget as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget as u128,
            });
        }
        let d = self.dim();
        let hi = strictly_below(t);
        let mut cur = vec![1u64; d];
        let mut count: u64 = 0;
        if hi >= 1 {
            'outer: loop {
                if cur.iter().all(|&c| c >= min_coord)
                    && self.contains_scaled(&cur, t)
                    && slice_gcd(&cur) == 1
                {
                    count += 1;
                }
                let mut i = d - 1;
                loop {
                    if cur[i] < hi {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = 1;
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                }
            }
        }
        let z = zeta(d as u32)?;
        let ratio = count as f64 * z / (t.powi(d as i32) * self.volume());
        Ok((count, ratio))
    }

    /// Samples `indices` of the uniform distribution on primitive points of
    /// `t * D` (with the same min-coordinate filter as enumeration). Sample
    /// i is drawn from its own ChaCha8 stream keyed by (seed, i), so any
    /// index subset can be generated independently and in any order.
    pub fn sample_primitive_indices(
        &self,
        t: f64,
        seed: u64,
        min_coord: u64,
        indices: core::ops::Range<u64>,
    ) -> Result<Vec<PrimitivePoint>> {
        check_t(t)?;
        let d = self.dim();
        let hi = strictly_below(t);
        if hi < 1 {
            return Err(Error::EmptyInput {
                what: "dilated domain (t too small)",
            });
        }
        let mut out = Vec::with_capacity((indices.end - indices.start) as usize);
        for i in indices {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut attempts = 0u64;
            loop {
                attempts += 1;
                if attempts > SAMPLE_ATTEMPT_CAP {
                    return Err(Error::SamplingStalled {
                        index: i,
                        attempts,
                    });
                }
                let mut c = Vec::with_capacity(d);
                for _ in 0..d {
                    c.push(rng.gen_range(1..=hi));
                }
                if c.iter().all(|&v| v >= min_coord)
                    && self.contains_scaled(&c, t)
                    && slice_gcd(&c) == 1
                {
                    out.push(PrimitivePoint::new_prechecked(c));
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn sample_primitive(
        &self,
        t: f64,
        n: usize,
        seed: u64,
        min_coord: u64,
    ) -> Result<Vec<PrimitivePoint>> {
        self.sample_primitive_indices(t, seed, min_coord, 0..n as u64)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonPositive {
            name: "dilation factor t",
        });
    }
    Ok(())
}

/// Largest integer strictly below t (0 when t <= 1).
fn strictly_below(t: f64) -> u64 {
    if t <= 1.0 {
        return 0;
    }
    let f = t.floor();
    let v = if f == t { f - 1.0 } else { f };
    if v >= 9.0e15 {
        9_000_000_000_000_000
    } else {
        v as u64
    }
}
