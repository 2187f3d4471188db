//! Confirms the closed-form difference-body volumes by lattice-point
//! counting: the number of integer points in the k-th dilate of an integral
//! polytope is a degree-n polynomial in k whose leading coefficient is the
//! volume, recoverable exactly from n-th finite differences.

use frobenius_core::convexgeom::{vol_diff_simplex, Gauge, GaugeKind};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer points x with max(sum x+, sum x-) <= k, counted by direct sweep.
fn diff_body_points(n: usize, k: i64) -> i64 {
    let mut count = 0i64;
    let mut x = vec![-k; n];
    'outer: loop {
        let pos: i64 = x.iter().filter(|&&v| v > 0).sum();
        let neg: i64 = -x.iter().filter(|&&v| v < 0).sum::<i64>();
        if pos <= k && neg <= k {
            count += 1;
        }
        for i in 0..n {
            if x[i] < k {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -k;
        }
        break;
    }
    count
}

fn binomial(n: u64, k: u64) -> i64 {
    let mut b = 1i64;
    for i in 0..k {
        b = b * (n - i) as i64 / (i + 1) as i64;
    }
    b
}

/// Leading coefficient of the interpolating polynomial through
/// (0, f(0)) .. (n, f(n)): the n-th forward difference over n factorial.
fn leading_coefficient(values: &[i64]) -> BigRational {
    let n = values.len() - 1;
    let mut diff = BigInt::from(0);
    for (j, &v) in values.iter().enumerate() {
        let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
        diff += BigInt::from(sign * binomial(n as u64, j as u64)) * BigInt::from(v);
    }
    let mut fact = BigInt::from(1);
    for i in 2..=n {
        fact *= BigInt::from(i as i64);
    }
    BigRational::new(diff, fact)
}

#[test]
fn counting_recovers_difference_body_volumes() {
    for d in [3usize, 4, 5] {
        let n = d - 1;
        let values: Vec<i64> = (0..=n as i64).map(|k| diff_body_points(n, k)).collect();
        assert_eq!(values[0], 1);
        let vol = leading_coefficient(&values);
        assert_eq!(
            vol,
            vol_diff_simplex(d).unwrap(),
            "volume mismatch in dimension {}",
            n
        );
    }
}

#[test]
fn point_counts_agree_with_the_gauge() {
    // the sweep's membership predicate is the difference gauge itself
    let gauge = Gauge::new(GaugeKind::DiffSimplex, 2).unwrap();
    let mut by_gauge = 0;
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            if gauge.eval(&[x as f64, y as f64]).unwrap() <= 3.0 {
                by_gauge += 1;
            }
        }
    }
    assert_eq!(by_gauge, diff_body_points(2, 3));
}
