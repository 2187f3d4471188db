//! Lattice-point counts in fixed test bodies, averaged over ensembles of
//! unimodular lattices, against the mean-value prediction vol(body), plus
//! small-ball statistics of the first minimum.
//!
//! Counts include both of +-v, so means compare against the plain volume
//! (no factor 2 convention).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::convexgeom::{first_minimum, floor_sqrt_rational, require_unimodular, Gauge};
use crate::error::{Error, Result};
use crate::lattice::{lagrange_reduce, rat_inv, RealLatticeBasis};
use crate::numeric::{big_ratio_f64, rational_from_f64};
// Required for no_std float math; tests link std whose inherent methods
// shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;

/// Symmetric convex test body, centered at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum TestBody {
    CenteredBox { half_widths: Vec<f64> },
    CenteredBall { dim: usize, radius: f64 },
}

impl TestBody {
    pub fn centered_box(half_widths: Vec<f64>) -> Result<Self> {
        if half_widths.is_empty() {
            return Err(Error::EmptyInput {
                what: "box half-widths",
            });
        }
        if half_widths.iter().any(|&h| !(h.is_finite() && h > 0.0)) {
            return Err(Error::NonPositive {
                name: "box half-width",
            });
        }
        Ok(TestBody::CenteredBox { half_widths })
    }

    pub fn centered_ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput { what: "ball dimension" });
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::NonPositive {
                name: "ball radius",
            });
        }
        Ok(TestBody::CenteredBall { dim, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            TestBody::CenteredBox { half_widths } => half_widths.len(),
            TestBody::CenteredBall { dim, .. } => *dim,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            TestBody::CenteredBox { half_widths } => {
                half_widths.iter().map(|h| 2.0 * h).product()
            }
            TestBody::CenteredBall { dim, radius } => {
                let mut v = unit_ball_volume(*dim);
                for _ in 0..*dim {
                    v *= radius;
                }
                v
            }
        }
    }

    /// Closed membership test.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            TestBody::CenteredBox { half_widths } => x
                .iter()
                .zip(half_widths)
                .all(|(xi, h)| xi.abs() <= *h),
            TestBody::CenteredBall { radius, .. } => {
                x.iter().map(|xi| xi * xi).sum::<f64>() <= radius * radius
            }
        }
    }

    /// Exact squared radius of the smallest origin-centered Euclidean ball
    /// containing the body (f64 parameters are exact rationals).
    fn circumradius_sq(&self) -> Result<BigRational> {
        match self {
            TestBody::CenteredBox { half_widths } => {
                let mut s = BigRational::zero();
                for &h in half_widths {
                    let r = rational_from_f64(h)?;
                    s += &r * &r;
                }
                Ok(s)
            }
            TestBody::CenteredBall { radius, .. } => {
                let r = rational_from_f64(*radius)?;
                Ok(&r * &r)
            }
        }
    }
}

/// Volume of the n-dimensional Euclidean unit ball by the two-step
/// recurrence V_n = V_{n-2} * 2 pi / n.
pub fn unit_ball_volume(n: usize) -> f64 {
    let mut v = if n % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        v *= 2.0 * core::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

/// Number of nonzero lattice vectors inside the body (closed), exact box
/// enumeration with a Euclidean coefficient bound.
pub fn count_in_body(basis: &RealLatticeBasis, body: &TestBody, budget: u128) -> Result<u64> {
    let n = basis.dim();
    if body.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: body.dim(),
        });
    }
    // ||s R c|| <= rho  <=>  ||R c|| <= rho / s; bound the right side by an
    // exact (or slightly inflated) rational before taking coefficient boxes.
    let rho2 = body.circumradius_sq()?;
    let rho2_unscaled = match basis.scale().pow_exact(2) {
        Some(s2) => rho2 / s2,
        None => {
            let s = basis.scale().value();
            let s2_lower = rational_from_f64(s * s * (1.0 - 1e-9))?;
            if !s2_lower.is_positive() {
                return Err(Error::NonPositive {
                    name: "squared basis scale",
                });
            }
            rho2 / s2_lower
        }
    };
    // Count over a reduced basis of the same lattice when possible; short
    // columns keep the coefficient box near-minimal.
    let cols: Vec<Vec<BigRational>> = if n == 2 {
        let arr = [
            basis.rational_columns()[0].clone(),
            basis.rational_columns()[1].clone(),
        ];
        let (red, _) = lagrange_reduce(&arr);
        red.to_vec()
    } else {
        basis.rational_columns().to_vec()
    };
    let inv = rat_inv(&cols)?;
    let mut bounds = Vec::with_capacity(n);
    let mut count = BigUint::one();
    for i in 0..n {
        let row_norm2 = (0..n).fold(BigRational::zero(), |s, j| s + &inv[j][i] * &inv[j][i]);
        let b = floor_sqrt_rational(&(row_norm2 * &rho2_unscaled));
        count *= BigUint::from(2u32) * b.magnitude() + BigUint::one();
        bounds.push(b);
    }
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            required: count.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    let bounds: Vec<i64> = bounds
        .iter()
        .map(|b| b.to_i64().expect("bound fits i64 under budget"))
        .collect();

    // The containment test works in f64 either way, so hoist the scaled
    // float columns out of the enumeration loop.
    let s = basis.scale().value();
    let fcols: Vec<Vec<f64>> = cols
        .iter()
        .map(|col| {
            col.iter()
                .map(|e| big_ratio_f64(e.numer(), e.denom()) * s)
                .collect()
        })
        .collect();

    let mut hits: u64 = 0;
    let mut c = vec![0i64; n];
    for (ci, bi) in c.iter_mut().zip(&bounds) {
        *ci = -bi;
    }
    let mut x = vec![0.0f64; n];
    'outer: loop {
        if c.iter().any(|&v| v != 0) {
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = c
                    .iter()
                    .zip(&fcols)
                    .map(|(&cj, col)| cj as f64 * col[i])
                    .sum();
            }
            if body.contains(&x) {
                hits += 1;
            }
        }
        for i in 0..n {
            if c[i] < bounds[i] {
                c[i] += 1;
                continue 'outer;
            }
            c[i] = -bounds[i];
        }
        break;
    }
    Ok(hits)
}

/// Mean nonzero-vector count over the ensemble next to the volume it should
/// approach for unimodular lattices.
pub fn siegel_statistic(
    bases: &[RealLatticeBasis],
    body: &TestBody,
    budget: u128,
) -> Result<(f64, f64)> {
    if bases.is_empty() {
        return Err(Error::EmptyInput {
            what: "lattice bases",
        });
    }
    let mut total: u64 = 0;
    for b in bases {
        require_unimodular(b)?;
        total += count_in_body(b, body, budget)?;
    }
    Ok((total as f64 / bases.len() as f64, body.volume()))
}

/// Fraction of lattices with first minimum strictly below r, per grid point.
pub fn lambda1_small_ball(
    bases: &[RealLatticeBasis],
    gauge: &Gauge,
    r_grid: &[f64],
    budget: u128,
) -> Result<Vec<(f64, f64)>> {
    if bases.is_empty() {
        return Err(Error::EmptyInput {
            what: "lattice bases",
        });
    }
    if !gauge.is_symmetric() {
        return Err(Error::AsymmetricGauge);
    }
    if r_grid.is_empty() {
        return Err(Error::BadGrid {
            reason: "empty radius grid",
        });
    }
    if r_grid.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
        return Err(Error::BadGrid {
            reason: "grid points must be positive",
        });
    }
    if r_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadGrid {
            reason: "grid must increase strictly",
        });
    }
    let mut lambda1s = Vec::with_capacity(bases.len());
    for b in bases {
        lambda1s.push(first_minimum(b, gauge, budget)?.0);
    }
    Ok(small_ball_fractions(&lambda1s, r_grid))
}

/// The aggregation step of `lambda1_small_ball`, for callers that computed
/// the first minima themselves.
pub fn small_ball_fractions(lambda1s: &[f64], r_grid: &[f64]) -> Vec<(f64, f64)> {
    let n = lambda1s.len() as f64;
    r_grid
        .iter()
        .map(|&r| {
            let k = lambda1s.iter().filter(|&&l| l < r).count();
            (r, k as f64 / n)
        })
        .collect()
}
