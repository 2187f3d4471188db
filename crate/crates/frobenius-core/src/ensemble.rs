//! Ensembles of Frobenius records over dilated domains, their empirical
//! distribution functions, tail-decay fits and convergence diagnostics.
//!
//! The central statistic per point a is (F(a) + sum a_i) / (prod a_i)^(1/(d-1)),
//! recorded next to the variant without the sum. Exhaustive ensembles are
//! ordered lexicographically, sampled ones by sample index, so rebuilding a
//! configuration reproduces the byte stream.

use alloc::vec::Vec;

use crate::domains::{Domain, PrimitivePoint};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_number, normalized_statistic_with, root_prod};
use crate::numeric::{linear_fit, zeta};
// Required for no_std float math; tests link std whose inherent methods
// shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { n: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct EnsembleRecord {
    pub a: PrimitivePoint,
    pub f_value: i128,
    pub sum_a: u128,
    pub root_prod: f64,
    pub q_stat: f64,
    pub q_stat_nosum: f64,
}

/// Full pipeline for one point: Frobenius number plus both normalized
/// statistics.
pub fn record_for(a: PrimitivePoint) -> Result<EnsembleRecord> {
    let f = frobenius_number(&a)?;
    Ok(EnsembleRecord {
        sum_a: a.sum(),
        root_prod: root_prod(&a),
        f_value: f.value,
        q_stat: normalized_statistic_with(&a, f.value, true),
        q_stat_nosum: normalized_statistic_with(&a, f.value, false),
        a,
    })
}

/// One record per primitive point of t*domain, in deterministic order.
pub fn build_ensemble(
    domain: &Domain,
    t: f64,
    mode: Mode,
    min_coord: u64,
    enum_budget: u64,
) -> Result<Vec<EnsembleRecord>> {
    let points = match mode {
        Mode::Exhaustive => domain.enumerate_primitive(t, min_coord, enum_budget)?,
        Mode::Sample { n, seed } => {
            domain.sample_primitive_indices(t, seed, min_coord, 0..n)?
        }
    };
    points.into_iter().map(record_for).collect()
}

/// The counting side of the limit statement: lhs = T^-d #{q_stat <= R},
/// reference = vol(D)/zeta(d), the large-R plateau of the left side.
pub fn distribution_value(
    records: &[EnsembleRecord],
    domain: &Domain,
    t: f64,
    mode: Mode,
    r: f64,
) -> Result<(f64, f64)> {
    if mode != Mode::Exhaustive {
        return Err(Error::ExhaustiveRequired);
    }
    if records.is_empty() {
        return Err(Error::EmptyInput { what: "records" });
    }
    let d = domain.dim();
    let count = records.iter().filter(|rec| rec.q_stat <= r).count();
    let lhs = count as f64 / t.powi(d as i32);
    let reference = domain.volume() / zeta(d as u32)?;
    Ok((lhs, reference))
}

/// Empirical CDF stored as the sorted sample.
#[derive(Debug, Clone)]
pub struct Ecdf {
    values: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput { what: "ecdf sample" });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("ecdf sample contains non-finite values".into()));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(Ecdf { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.values
    }

    /// Fraction of the sample at most r.
    pub fn eval(&self, r: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= r);
        k as f64 / self.values.len() as f64
    }
}

/// Exact sup distance between two empirical CDFs: the sup over all reals is
/// attained at a jump of either sample, so walking the merged jump set and
/// comparing counts after each distinct value is exact.
pub fn ks_distance(e1: &Ecdf, e2: &Ecdf) -> f64 {
    let a = &e1.values;
    let b = &e2.values;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut best = 0.0f64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        let diff = (i as f64 / na - j as f64 / nb).abs();
        if diff > best {
            best = diff;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct TailFit {
    pub r_grid: Vec<f64>,
    /// Fraction of values strictly above each grid point.
    pub psi_hat: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub const TAIL_MIN_RECORDS: usize = 1000;

/// Survival fractions on the grid and the log-log least-squares line through
/// the points with positive mass.
pub fn tail_fit(values: &[f64], r_grid: &[f64]) -> Result<TailFit> {
    if values.len() < TAIL_MIN_RECORDS {
        return Err(Error::TooFewRecords {
            needed: TAIL_MIN_RECORDS,
            got: values.len(),
        });
    }
    validate_grid(r_grid)?;
    let n = values.len() as f64;
    let psi_hat: Vec<f64> = r_grid
        .iter()
        .map(|&r| values.iter().filter(|&&v| v > r).count() as f64 / n)
        .collect();
    let pts: Vec<(f64, f64)> = r_grid
        .iter()
        .zip(&psi_hat)
        .filter(|(_, &p)| p > 0.0)
        .map(|(&r, &p)| (r.ln(), p.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateTail {
            positive: pts.len(),
        });
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (slope, intercept, r2) = linear_fit(&xs, &ys)?;
    Ok(TailFit {
        r_grid: r_grid.to_vec(),
        psi_hat,
        slope,
        intercept,
        r2,
    })
}

/// Geometric grid between the sample median and the 30th-largest value,
/// keeping every survival estimate on at least 30 points.
pub fn default_tail_grid(values: &[f64], points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return Err(Error::BadGrid {
            reason: "need at least 3 grid points",
        });
    }
    let n = values.len();
    if n < 63 {
        return Err(Error::TooFewRecords { needed: 63, got: n });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let lo = sorted[(n - 1) / 2];
    let hi = sorted[n - 31];
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::BadGrid {
            reason: "degenerate sample range",
        });
    }
    let m = points as f64 - 1.0;
    Ok((0..points)
        .map(|k| lo * (hi / lo).powf(k as f64 / m))
        .collect())
}

fn validate_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.len() < 3 {
        return Err(Error::BadGrid {
            reason: "need at least 3 grid points",
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
    Ok(())
}

/// KS distances between the distribution at consecutive dilation sizes.
pub fn convergence_report(ecdfs: &[(f64, Ecdf)]) -> Result<Vec<((f64, f64), f64)>> {
    if ecdfs.len() < 2 {
        return Err(Error::TooFewRecords {
            needed: 2,
            got: ecdfs.len(),
        });
    }
    Ok(ecdfs
        .windows(2)
        .map(|w| ((w[0].0, w[1].0), ks_distance(&w[0].1, &w[1].1)))
        .collect())
}
