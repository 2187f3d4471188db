//! Small numeric utilities shared across modules: zeta values, big-integer
//! roots with guard digits, dense f64 linear algebra for matrices of size at
//! most ~10, and least squares on log-log data.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
// Required for no_std float math; tests link std whose inherent
// methods shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tol;

/// zeta(d) for integer d >= 2, by partial summation plus the integral tail
/// bracket [ (N+1)^(1-d)/(d-1), N^(1-d)/(d-1) ]. N is grown until the
/// bracket is narrower than `tol::ZETA_EPS`; the midpoint is returned, so the
/// absolute error is below 5e-14.
pub fn zeta(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::UnsupportedDimension {
            required: "zeta argument >= 2",
            got: d as usize,
        });
    }
    let dm1 = (d - 1) as f64;
    let mut n: u64 = 64;
    loop {
        let lo_tail = ((n + 1) as f64).powf(-dm1) / dm1;
        let hi_tail = (n as f64).powf(-dm1) / dm1;
        if hi_tail - lo_tail <= tol::ZETA_EPS {
            // Sum smallest terms first to keep the f64 accumulation tight.
            let mut s = 0.0_f64;
            let mut k = n;
            while k >= 1 {
                s += (k as f64).powi(-(d as i32));
                k -= 1;
            }
            return Ok(s + 0.5 * (lo_tail + hi_tail));
        }
        n = n.saturating_mul(2);
    }
}

/// Decimal guard digits carried by `root_with_guard`. 30 digits is just
/// under 100 bits, comfortably past the 80-bit requirement on the
/// normalized statistic.
pub const ROOT_GUARD_DIGITS: u32 = 30;

/// Floor((x * 10^(30k))^(1/k)) as (integer, 10^30), i.e. x^(1/k) with 30
/// correct decimal digits. Exact integer arithmetic throughout.
pub fn root_with_guard(x: &BigUint, k: u32) -> (BigUint, BigUint) {
    assert!(k >= 1, "root order must be >= 1");
    let scale = BigUint::from(10u32).pow(ROOT_GUARD_DIGITS);
    let scaled = x * scale.pow(k);
    (scaled.nth_root(k), scale)
}

/// (num / den)^(1/k) -> f64 via the guarded integer root of both sides.
pub fn rational_root_f64(num: &BigUint, den: &BigUint, k: u32) -> f64 {
    let (rn, sn) = root_with_guard(num, k);
    let (rd, _) = root_with_guard(den, k);
    if rd.is_zero() {
        return f64::INFINITY;
    }
    // (rn/s) / (rd/s) = rn/rd; both carry the same guard scale.
    let _ = sn;
    big_ratio_f64(&BigInt::from(rn), &BigInt::from(rd))
}

/// num/den as f64 through BigRational's conversion (correct to ~1 ulp of the
/// final division).
pub fn big_ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Ordinary least squares of y against x. Returns (slope, intercept, r2).
/// r2 is defined as 1 when the total sum of squares vanishes.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::TooFewRecords {
            needed: 2,
            got: xs.len(),
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::BadGrid {
            reason: "all abscissae equal; no slope",
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok((slope, intercept, r2))
}

/// Dense row-major f64 matrix inverse by Gauss-Jordan with partial pivoting.
/// Intended for n <= 10.
pub fn mat_inv_f64(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == 0.0 {
            return Err(Error::SingularMatrix);
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Ok(inv)
}

pub fn mat_mul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

/// Determinant by LU with partial pivoting; fine for the well-conditioned
/// group elements this crate builds.
pub fn mat_det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for j in col..n {
                    a[r][j] -= f * a[col][j];
                }
            }
        }
    }
    det
}

/// Nearest integer to an exact rational, ties toward +infinity. The
/// denominator of a normalized rational is positive, so floor division is
/// Euclidean here.
pub fn rational_round(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = x.numer() * &two + x.denom();
    let den = x.denom() * &two;
    num.div_floor(&den)
}

/// Exact floor/ceil of a rational as BigInt.
pub fn rational_floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn rational_ceil(x: &BigRational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Exact conversion of a finite f64 into a rational.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::Invalid(alloc::format!(
        "cannot convert {} to a rational",
        x
    )))
}

/// gcd of a nonempty slice.
pub fn slice_gcd(v: &[u64]) -> u64 {
    v.iter().fold(0u64, |g, &x| num_integer::gcd(g, x))
}

pub fn is_sorted_nondecreasing(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}
