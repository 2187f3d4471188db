//! Gauge functions of the standard simplex, its difference body and the
//! polar of the difference body, plus successive minima of those gauges on
//! a lattice, computed exactly by enumeration.
//!
//! The closed forms:
//!   simplex            g(x) = sum x_i        if all x_i >= 0, else infinity
//!   difference body    g(x) = max(sum of positive parts, sum of negative parts)
//!   polar of diff body g(x) = (max_i x_i)^+ + (max_i -x_i)^+
//!
//! Minima are found by enumerating every lattice vector inside a Euclidean
//! ball that provably contains the gauge ball of radius t (circumradius
//! argument), then greedily selecting by increasing gauge value subject to
//! linear independence. Gauge values of rational vectors are rational, so
//! all comparisons along the way are exact; floats appear only in the
//! reported minima after multiplying by the basis scale.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{lagrange_reduce, rat_inv, RealLatticeBasis};
use crate::numeric::big_ratio_f64;
use crate::tol;

/// Candidate-vector cap for one enumeration pass.
pub const DEFAULT_MINIMA_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeKind {
    Simplex,
    DiffSimplex,
    PolarDiffSimplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gauge {
    kind: GaugeKind,
    dim: usize,
}

impl Gauge {
    pub fn new(kind: GaugeKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput { what: "gauge dimension" });
        }
        Ok(Gauge { kind, dim })
    }

    pub fn simplex(dim: usize) -> Result<Self> {
        Gauge::new(GaugeKind::Simplex, dim)
    }

    pub fn diff_simplex(dim: usize) -> Result<Self> {
        Gauge::new(GaugeKind::DiffSimplex, dim)
    }

    pub fn polar_diff_simplex(dim: usize) -> Result<Self> {
        Gauge::new(GaugeKind::PolarDiffSimplex, dim)
    }

    pub fn kind(&self) -> GaugeKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Symmetric gauges satisfy g(-x) = g(x); the simplex gauge does not.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self.kind, GaugeKind::Simplex)
    }

    /// Extended-real gauge value; +infinity outside the simplex cone.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(match self.kind {
            GaugeKind::Simplex => {
                if x.iter().any(|&v| v < 0.0) {
                    f64::INFINITY
                } else {
                    x.iter().sum()
                }
            }
            GaugeKind::DiffSimplex => {
                let pos: f64 = x.iter().filter(|&&v| v > 0.0).sum();
                let neg: f64 = -x.iter().filter(|&&v| v < 0.0).sum::<f64>();
                pos.max(neg)
            }
            GaugeKind::PolarDiffSimplex => {
                let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
                hi.max(0.0) - lo.min(0.0)
            }
        })
    }

    /// Exact gauge value of a rational vector; None encodes +infinity.
    pub(crate) fn eval_rational(&self, x: &[BigRational]) -> Option<BigRational> {
        debug_assert_eq!(x.len(), self.dim);
        match self.kind {
            GaugeKind::Simplex => {
                if x.iter().any(|v| v.is_negative()) {
                    None
                } else {
                    Some(x.iter().fold(BigRational::zero(), |s, v| s + v))
                }
            }
            GaugeKind::DiffSimplex => {
                let mut pos = BigRational::zero();
                let mut neg = BigRational::zero();
                for v in x {
                    if v.is_positive() {
                        pos += v;
                    } else {
                        neg -= v;
                    }
                }
                Some(pos.max(neg))
            }
            GaugeKind::PolarDiffSimplex => {
                let zero = BigRational::zero();
                let hi = x.iter().max().cloned().unwrap_or_else(|| zero.clone());
                let lo = x.iter().min().cloned().unwrap_or_else(|| zero.clone());
                Some(hi.max(zero.clone()) - lo.min(zero))
            }
        }
    }

    /// Squared circumradius of the unit gauge ball: every x with g(x) <= t
    /// has squared Euclidean norm at most t^2 times this.
    pub fn circumradius_sq(&self) -> BigRational {
        let n = self.dim;
        let r2: u64 = match self.kind {
            GaugeKind::Simplex => 1,
            GaugeKind::DiffSimplex => {
                if n >= 2 {
                    2
                } else {
                    1
                }
            }
            GaugeKind::PolarDiffSimplex => n as u64,
        };
        BigRational::from(BigInt::from(r2))
    }
}

/// Volume of the difference body of the standard simplex in dimension d-1:
/// binom(2(d-1), d-1) / (d-1)!.
pub fn vol_diff_simplex(d: usize) -> Result<BigRational> {
    if d < 2 {
        return Err(Error::TooFewCoordinates { got: d });
    }
    let n = d - 1;
    let mut numer = BigUint::one();
    for k in n + 1..=2 * n {
        numer *= BigUint::from(k);
    }
    // numer is now (2n)!/n!; divide by n! once more for the binomial and
    // once for the simplex volume factor.
    let mut fact = BigUint::one();
    for k in 2..=n {
        fact *= BigUint::from(k);
    }
    let denom = &fact * &fact;
    Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

#[derive(Debug, Clone)]
pub struct MinimaResult {
    /// Successive minima in gauge units, nondecreasing.
    pub lambdas: Vec<f64>,
    /// Exact gauge values of the witnesses measured on the rational part of
    /// the basis, i.e. lambdas before multiplication by the scale factor.
    pub lambdas_exact: Vec<BigRational>,
    /// Witness coordinates in the supplied basis; independent, and witness i
    /// realizes lambdas[i].
    pub witnesses: Vec<Vec<i64>>,
}

struct Candidate {
    gauge: BigRational,
    norm2: BigRational,
    coeffs: Vec<BigInt>,
    vector: Vec<BigRational>,
}

/// All sign-normalized nonzero vectors y = R c with g(y) <= t, sorted by
/// (gauge, squared norm, coefficients). R is given by columns, inv_rows are
/// the squared row norms of R^-1.
fn enumerate_gauge_ball(
    cols: &[Vec<BigRational>],
    to_original: Option<&[[BigInt; 2]; 2]>,
    inv_row_norm2: &[BigRational],
    gauge: &Gauge,
    t: &BigRational,
    budget: u128,
) -> Result<Vec<Candidate>> {
    let n = cols.len();
    let rho2 = gauge.circumradius_sq() * t * t;
    let mut bounds = Vec::with_capacity(n);
    let mut count = BigUint::one();
    for rn in inv_row_norm2 {
        let b = floor_sqrt_rational(&(rn * &rho2));
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

    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    for b in bounds.iter().zip(c.iter_mut()) {
        *b.1 = -b.0;
    }
    'outer: loop {
        if c.iter().any(|&v| v != 0) {
            let coeffs_orig: Vec<BigInt> = match to_original {
                Some(v) => {
                    let c0 = BigInt::from(c[0]);
                    let c1 = BigInt::from(c[1]);
                    vec![
                        &v[0][0] * &c0 + &v[1][0] * &c1,
                        &v[0][1] * &c0 + &v[1][1] * &c1,
                    ]
                }
                None => c.iter().map(|&v| BigInt::from(v)).collect(),
            };
            // Keep one of each +-v pair: first nonzero original coefficient
            // must be positive.
            let lead_positive = coeffs_orig
                .iter()
                .find(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .unwrap_or(false);
            if lead_positive {
                let mut y = vec![BigRational::zero(); n];
                for (j, &cj) in c.iter().enumerate() {
                    if cj == 0 {
                        continue;
                    }
                    let cj = BigRational::from(BigInt::from(cj));
                    for i in 0..n {
                        let t2 = &y[i] + &cols[j][i] * &cj;
                        y[i] = t2;
                    }
                }
                if let Some(g) = gauge.eval_rational(&y) {
                    if &g <= t {
                        let norm2 = y.iter().fold(BigRational::zero(), |s, v| s + v * v);
                        out.push(Candidate {
                            gauge: g,
                            norm2,
                            coeffs: coeffs_orig,
                            vector: y,
                        });
                    }
                }
            }
        }
        // odometer over the coefficient box
        for i in 0..n {
            if c[i] < bounds[i] {
                c[i] += 1;
                continue 'outer;
            }
            c[i] = -bounds[i];
        }
        break;
    }
    out.sort_by(|a, b| {
        a.gauge
            .cmp(&b.gauge)
            .then_with(|| a.norm2.cmp(&b.norm2))
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    Ok(out)
}

/// Largest integer whose square is at most the (nonnegative) rational x.
pub(crate) fn floor_sqrt_rational(x: &BigRational) -> BigInt {
    debug_assert!(!x.is_negative());
    let q = x.numer().magnitude() / x.denom().magnitude();
    BigInt::from(q.sqrt())
}

/// Reduce y against the echelon rows; push and report true if independent.
fn grow_echelon(echelon: &mut Vec<Vec<BigRational>>, y: &[BigRational]) -> bool {
    let mut v = y.to_vec();
    for row in echelon.iter() {
        let pivot = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("echelon rows are nonzero");
        if !v[pivot].is_zero() {
            let f = &v[pivot] / &row[pivot];
            for (vi, ri) in v.iter_mut().zip(row.iter()) {
                let t = &*vi - &f * ri;
                *vi = t;
            }
        }
    }
    if v.iter().all(|x| x.is_zero()) {
        return false;
    }
    echelon.push(v);
    true
}

/// Successive minima of a symmetric gauge on the lattice spanned by B,
/// with independent witnesses, exact by enumeration.
pub fn successive_minima(
    basis: &RealLatticeBasis,
    gauge: &Gauge,
    budget: u128,
) -> Result<MinimaResult> {
    minima_prefix(basis, gauge, basis.dim(), budget)
}

/// First minimum only (cheaper: no doubling past the first hit).
pub fn first_minimum(
    basis: &RealLatticeBasis,
    gauge: &Gauge,
    budget: u128,
) -> Result<(f64, Vec<i64>)> {
    let r = minima_prefix(basis, gauge, 1, budget)?;
    Ok((r.lambdas[0], r.witnesses.into_iter().next().unwrap()))
}

fn minima_prefix(
    basis: &RealLatticeBasis,
    gauge: &Gauge,
    want: usize,
    budget: u128,
) -> Result<MinimaResult> {
    if !gauge.is_symmetric() {
        return Err(Error::AsymmetricGauge);
    }
    let n = basis.dim();
    if gauge.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gauge.dim(),
        });
    }
    // Lagrange reduction keeps rank-2 enumeration boxes small; higher ranks
    // are enumerated as given.
    let (cols, map): (Vec<Vec<BigRational>>, Option<[[BigInt; 2]; 2]>) = if n == 2 {
        let arr = [
            basis.rational_columns()[0].clone(),
            basis.rational_columns()[1].clone(),
        ];
        let (red, v) = lagrange_reduce(&arr);
        (red.to_vec(), Some(v))
    } else {
        (basis.rational_columns().to_vec(), None)
    };
    let inv = rat_inv(&cols)?;
    let inv_row_norm2: Vec<BigRational> = (0..n)
        .map(|i| {
            (0..n).fold(BigRational::zero(), |s, j| {
                let e = &inv[j][i];
                s + e * e
            })
        })
        .collect();

    // Start from the best gauge value among the (possibly reduced) basis
    // vectors; that ball is guaranteed nonempty.
    let mut t = cols
        .iter()
        .filter_map(|c| gauge.eval_rational(c))
        .min()
        .ok_or(Error::AsymmetricGauge)?;

    let scale = basis.scale().value();
    loop {
        let cands = enumerate_gauge_ball(&cols, map.as_ref(), &inv_row_norm2, gauge, &t, budget)?;
        let mut echelon: Vec<Vec<BigRational>> = Vec::new();
        let mut lambdas_exact = Vec::with_capacity(want);
        let mut witnesses = Vec::with_capacity(want);
        for cand in &cands {
            if grow_echelon(&mut echelon, &cand.vector) {
                lambdas_exact.push(cand.gauge.clone());
                let w: Result<Vec<i64>> = cand
                    .coeffs
                    .iter()
                    .map(|v| {
                        v.to_i64()
                            .ok_or_else(|| Error::Invalid("witness coordinate exceeds i64".into()))
                    })
                    .collect();
                witnesses.push(w?);
                if witnesses.len() == want {
                    let lambdas = lambdas_exact
                        .iter()
                        .map(|g| big_ratio_f64(g.numer(), g.denom()) * scale)
                        .collect();
                    return Ok(MinimaResult {
                        lambdas,
                        lambdas_exact,
                        witnesses,
                    });
                }
            }
        }
        t *= BigRational::from(BigInt::from(2));
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MinkowskiCheck {
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub product: f64,
}

/// Second-theorem sandwich for the difference-body gauge on a unimodular
/// lattice of rank d-1: 2^(d-1)/(d-1)! <= vol * prod lambda_i <= 2^(d-1),
/// checked with a small slack. The product is exact whenever the basis
/// scale admits an exact power, which holds for every lattice built here.
pub fn minkowski_check(basis: &RealLatticeBasis, d: usize, budget: u128) -> Result<MinkowskiCheck> {
    let n = basis.dim();
    if d != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: d,
        });
    }
    require_unimodular(basis)?;
    let gauge = Gauge::diff_simplex(n)?;
    let minima = successive_minima(basis, &gauge, budget)?;
    let vol = vol_diff_simplex(d)?;
    let slack = tol::MINKOWSKI_SLACK;
    let two = BigRational::from(BigInt::from(2));
    let mut upper = BigRational::one();
    for _ in 0..n {
        upper *= &two;
    }
    let mut fact = BigRational::one();
    for k in 2..=n {
        fact *= BigRational::from(BigInt::from(k));
    }
    let lower = &upper / &fact;

    match basis.scale().pow_exact(n as u32) {
        Some(sn) => {
            let mut prod = vol.clone() * sn;
            for g in &minima.lambdas_exact {
                prod *= g;
            }
            let product = big_ratio_f64(prod.numer(), prod.denom());
            let slack_r = BigRational::from_float(slack).unwrap();
            Ok(MinkowskiCheck {
                lower_ok: prod >= &lower - &slack_r,
                upper_ok: prod <= &upper + &slack_r,
                product,
            })
        }
        None => {
            let volf = big_ratio_f64(vol.numer(), vol.denom());
            let product = minima.lambdas.iter().product::<f64>() * volf;
            Ok(MinkowskiCheck {
                lower_ok: product >= big_ratio_f64(lower.numer(), lower.denom()) - slack,
                upper_ok: product <= big_ratio_f64(upper.numer(), upper.denom()) + slack,
                product,
            })
        }
    }
}

/// lambda_(d-1) of the difference-body gauge on L times lambda_1 of the
/// polar gauge on the dual lattice. The scale factors cancel exactly.
pub fn transference_product(basis: &RealLatticeBasis, budget: u128) -> Result<f64> {
    require_unimodular(basis)?;
    let n = basis.dim();
    let primal = successive_minima(basis, &Gauge::diff_simplex(n)?, budget)?;
    let dual = basis.dual()?;
    let polar = minima_prefix(&dual, &Gauge::polar_diff_simplex(n)?, 1, budget)?;
    let g_primal = primal.lambdas_exact.last().unwrap();
    let g_dual = &polar.lambdas_exact[0];
    // scale(dual) = 1/scale, so the product of the two real minima is the
    // product of the exact gauge values.
    let prod = g_primal * g_dual;
    Ok(big_ratio_f64(prod.numer(), prod.denom()))
}

pub(crate) fn require_unimodular(basis: &RealLatticeBasis) -> Result<()> {
    let det = basis.det_f64().abs();
    if (det - 1.0).abs() > tol::UNIMODULAR_DET {
        return Err(Error::NotUnimodular {
            det: basis.det_f64(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::PrimitivePoint;
    use crate::lattice::{frobenius_lattice, Scale};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn basis_from_f64_diag(d: &[(i64, i64)]) -> RealLatticeBasis {
        let n = d.len();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { rat(d[j].0, d[j].1) } else { rat(0, 1) })
                    .collect()
            })
            .collect();
        RealLatticeBasis::from_parts(cols, Scale::one()).unwrap()
    }

    #[test]
    fn gauge_closed_forms() {
        let diff = Gauge::diff_simplex(2).unwrap();
        assert_eq!(diff.eval(&[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(diff.eval(&[1.0, -1.0]).unwrap(), 1.0);
        assert_eq!(diff.eval(&[1.0, -2.0]).unwrap(), 2.0);
        assert_eq!(diff.eval(&[2.0, 3.0]).unwrap(), 5.0);
        let polar = Gauge::polar_diff_simplex(2).unwrap();
        assert_eq!(polar.eval(&[1.0, -1.0]).unwrap(), 2.0);
        assert_eq!(polar.eval(&[1.0, 1.0]).unwrap(), 1.0);
        let sim = Gauge::simplex(2).unwrap();
        assert_eq!(sim.eval(&[0.2, 0.3]).unwrap(), 0.5);
        assert_eq!(sim.eval(&[-0.1, 0.3]).unwrap(), f64::INFINITY);
        assert!(sim.eval(&[0.1]).is_err());
    }

    #[test]
    fn gauges_are_homogeneous_and_symmetric() {
        let pts = [
            [0.3, -1.7, 0.2],
            [1.0, 2.0, 3.0],
            [-0.5, -0.25, 0.0],
            [4.0, -4.0, 4.0],
        ];
        for kind in [GaugeKind::DiffSimplex, GaugeKind::PolarDiffSimplex] {
            let g = Gauge::new(kind, 3).unwrap();
            for p in &pts {
                let v = g.eval(p).unwrap();
                let neg: Vec<f64> = p.iter().map(|x| -x).collect();
                assert!((g.eval(&neg).unwrap() - v).abs() < 1e-12);
                let scaled: Vec<f64> = p.iter().map(|x| 2.5 * x).collect();
                assert!((g.eval(&scaled).unwrap() - 2.5 * v).abs() < 1e-12);
            }
        }
        // rational and float paths agree
        let g = Gauge::diff_simplex(3).unwrap();
        let xr = vec![rat(3, 10), rat(-17, 10), rat(1, 5)];
        let exact = g.eval_rational(&xr).unwrap();
        let approx = g.eval(&[0.3, -1.7, 0.2]).unwrap();
        assert!((big_ratio_f64(exact.numer(), exact.denom()) - approx).abs() < 1e-12);
    }

    #[test]
    fn diff_body_volumes() {
        assert_eq!(vol_diff_simplex(2).unwrap(), rat(2, 1));
        assert_eq!(vol_diff_simplex(3).unwrap(), rat(3, 1));
        assert_eq!(vol_diff_simplex(4).unwrap(), rat(10, 3));
        assert!(vol_diff_simplex(1).is_err());
    }

    #[test]
    fn minima_on_unit_lattice() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let diff = Gauge::diff_simplex(2).unwrap();
        let r = successive_minima(&z2, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        assert_eq!(r.lambdas_exact, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(r.witnesses.len(), 2);
        for w in &r.witnesses {
            assert_eq!(w.iter().map(|v| v.abs()).sum::<i64>(), 1);
        }
        let polar = Gauge::polar_diff_simplex(2).unwrap();
        let r = successive_minima(&z2, &polar, DEFAULT_MINIMA_BUDGET).unwrap();
        assert_eq!(r.lambdas_exact, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn minima_on_stretched_diagonal() {
        let b = basis_from_f64_diag(&[(2, 1), (1, 2)]);
        let diff = Gauge::diff_simplex(2).unwrap();
        let r = successive_minima(&b, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        assert_eq!(r.lambdas_exact, vec![rat(1, 2), rat(2, 1)]);
        assert_eq!(r.witnesses[0], vec![0, 1]);
        assert_eq!(r.witnesses[1], vec![1, 0]);
    }

    #[test]
    fn minima_on_frobenius_lattice_are_exact() {
        let p = PrimitivePoint::new(vec![2, 3, 5]).unwrap();
        let b = frobenius_lattice(&p).unwrap();
        let diff = Gauge::diff_simplex(2).unwrap();
        let r = successive_minima(&b, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        assert_eq!(r.lambdas_exact, vec![rat(5, 1), rat(6, 1)]);
        // lambdas carry the 30^(-1/2) scale
        assert!((r.lambdas[0] - 5.0 / 30f64.sqrt()).abs() < 1e-12);
        assert!((r.lambdas[1] - 6.0 / 30f64.sqrt()).abs() < 1e-12);
        // witness gauge matches the reported minimum in real units
        let bf = b.to_f64();
        for (w, &l) in r.witnesses.iter().zip(&r.lambdas) {
            let x: Vec<f64> = (0..2)
                .map(|i| (0..2).map(|j| bf[i][j] * w[j] as f64).sum())
                .collect();
            assert!((diff.eval(&x).unwrap() - l).abs() < 1e-9);
        }
    }

    #[test]
    fn minima_scale_covariantly() {
        let cols = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        let b = RealLatticeBasis::from_parts(cols, Scale::new(rat(4, 1), 1).unwrap()).unwrap();
        let diff = Gauge::diff_simplex(2).unwrap();
        let r = successive_minima(&b, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!((r.lambdas[0] - 4.0).abs() < 1e-12);
        assert!((r.lambdas[1] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn minima_refuse_asymmetric_gauge_and_tiny_budget() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let sim = Gauge::simplex(2).unwrap();
        assert!(matches!(
            successive_minima(&z2, &sim, DEFAULT_MINIMA_BUDGET),
            Err(Error::AsymmetricGauge)
        ));
        let diff = Gauge::diff_simplex(2).unwrap();
        match successive_minima(&z2, &diff, 2) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert!(required > 2);
                assert_eq!(budget, 2);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn minkowski_sandwich_known_cases() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let c = minkowski_check(&z2, 3, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!(c.lower_ok && c.upper_ok);
        assert!((c.product - 3.0).abs() < 1e-12);
        let b = basis_from_f64_diag(&[(2, 1), (1, 2)]);
        let c = minkowski_check(&b, 3, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!(c.lower_ok && c.upper_ok);
        assert!((c.product - 3.0).abs() < 1e-12);
        // non-unimodular refusal
        let bad = basis_from_f64_diag(&[(3, 1), (1, 1)]);
        assert!(matches!(
            minkowski_check(&bad, 3, DEFAULT_MINIMA_BUDGET),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn transference_known_cases() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let t = transference_product(&z2, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        let b = basis_from_f64_diag(&[(2, 1), (1, 2)]);
        let t = transference_product(&b, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        let p = PrimitivePoint::new(vec![2, 3, 5]).unwrap();
        let la = frobenius_lattice(&p).unwrap();
        let t = transference_product(&la, DEFAULT_MINIMA_BUDGET).unwrap();
        assert!(t.is_finite() && t >= 1.0 - 1e-12);
    }

    #[test]
    fn first_minimum_matches_full_run() {
        let p = PrimitivePoint::new(vec![6, 9, 20]).unwrap();
        let b = frobenius_lattice(&p).unwrap();
        let diff = Gauge::diff_simplex(2).unwrap();
        let full = successive_minima(&b, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        let (l1, w1) = first_minimum(&b, &diff, DEFAULT_MINIMA_BUDGET).unwrap();
        assert_eq!(l1, full.lambdas[0]);
        assert_eq!(w1, full.witnesses[0]);
    }
}
