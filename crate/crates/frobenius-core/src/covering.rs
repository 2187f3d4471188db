//! Covering radius of the standard simplex with respect to a rank-2 lattice,
//! computed two independent ways:
//!
//! * through the Frobenius number: Q = (F(a) + sum a_i) / (prod a_i)^(1/(d-1))
//!   on the determinant-one lattice attached to a;
//! * directly from the definition, for rank 2: certified bisection on t where
//!   each probe decides exactly, in rational arithmetic, whether the translates
//!   t*simplex + v cover the fundamental cell.
//!
//! The probe subtracts closed triangles from the cell with exact polygon
//! clipping; the cell is covered iff nothing of positive area remains. Every
//! vertex produced by the clipping is the intersection of two input lines, so
//! coordinate sizes stay bounded and the decision is exact at any probe t.
//! Any uncovered set is open, hence has positive area in some piece, so the
//! empty-residual test is sound for closed covering.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::convexgeom::{successive_minima, Gauge, MinimaResult};
use crate::domains::PrimitivePoint;
use crate::error::{Error, Result};
use crate::frobenius::frobenius_number;
use crate::lattice::{frobenius_lattice, lagrange_reduce, rat_inv, RealLatticeBasis};
use crate::numeric::{big_ratio_f64, rational_ceil, rational_floor, rational_from_f64};
use crate::tol;
// Required for no_std float math; tests link std whose inherent methods
// shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringMethod {
    FrobeniusIdentity,
    PlanarExact,
    SandwichOnly,
}

#[derive(Debug, Clone)]
pub struct CoveringResult {
    pub value: f64,
    pub method: CoveringMethod,
    /// Certified enclosure of the value; for the planar method its width is
    /// at most 2*tol.
    pub bracket: (f64, f64),
    pub tol: f64,
}

/// Q via the Frobenius number, with the minima sandwich as the bracket.
pub fn covering_radius_via_frobenius(
    a: &PrimitivePoint,
    budget: u128,
) -> Result<CoveringResult> {
    identity_result(a, budget, CoveringMethod::FrobeniusIdentity)
}

/// For ranks where no direct computation exists (d >= 4): the identity value
/// tagged as bracket-only, with the minima sandwich around it.
pub fn covering_radius_sandwich_only(
    a: &PrimitivePoint,
    budget: u128,
) -> Result<CoveringResult> {
    identity_result(a, budget, CoveringMethod::SandwichOnly)
}

fn identity_result(
    a: &PrimitivePoint,
    budget: u128,
    method: CoveringMethod,
) -> Result<CoveringResult> {
    let f = frobenius_number(a)?;
    let basis = frobenius_lattice(a)?;
    let n = basis.dim();
    let minima = successive_minima(&basis, &Gauge::diff_simplex(n)?, budget)?;
    // Numerator F + sum a is a plain integer; the bracket endpoints carry the
    // same irrational scale as the value, so ordering survives rounding.
    let numer = BigRational::from(BigInt::from(f.value) + BigInt::from(a.sum()));
    let scale = basis.scale().value();
    let value = big_ratio_f64(numer.numer(), numer.denom()) * scale;
    let lower = minima.lambdas[n - 1];
    let upper: f64 = minima.lambdas.iter().sum();
    Ok(CoveringResult {
        value,
        method,
        bracket: (lower, upper),
        tol: 0.0,
    })
}

/// The minima sandwich (lambda_n, sum of lambdas) for the difference-body
/// gauge; encloses Q for every lattice.
pub fn covering_bounds(basis: &RealLatticeBasis, budget: u128) -> Result<(f64, f64)> {
    let n = basis.dim();
    let minima = successive_minima(basis, &Gauge::diff_simplex(n)?, budget)?;
    Ok((minima.lambdas[n - 1], minima.lambdas.iter().sum()))
}

/// Direct planar covering radius by certified bisection; rank 2 only.
pub fn covering_radius_planar(
    basis: &RealLatticeBasis,
    tol_value: f64,
    budget: u128,
) -> Result<CoveringResult> {
    if basis.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            required: "rank 2",
            got: basis.dim(),
        });
    }
    let minima = successive_minima(basis, &Gauge::diff_simplex(2)?, budget)?;
    planar_from_minima(basis, &minima, tol_value, budget)
}

/// The planar bisection with the minima sandwich already in hand.
///
/// Probe values are kept dyadic (exactly representable in f64) so rational
/// clipping coordinates never grow with the iteration count, and a float
/// replica of the coverage probe proposes a bracket that usually certifies
/// with two exact probes; every accepted decision is an exact one.
fn planar_from_minima(
    basis: &RealLatticeBasis,
    minima: &MinimaResult,
    tol_value: f64,
    budget: u128,
) -> Result<CoveringResult> {
    if !(tol_value.is_finite() && tol_value > 0.0) {
        return Err(Error::NonPositive { name: "tolerance" });
    }
    if tol_value < tol::PLANAR_MIN {
        return Err(Error::ToleranceTooSmall {
            min: tol::PLANAR_MIN,
        });
    }
    let scale = basis.scale().value();
    // Bisect in the unscaled rational coordinates; a slightly shrunk rational
    // tolerance keeps the final scaled width under 2*tol despite rounding.
    let tol_f = 0.95 * tol_value / scale;
    let tol_r = rational_from_f64(tol_f)
        .ok()
        .filter(|t| t.is_positive())
        .ok_or(Error::ToleranceTooSmall {
            min: tol::PLANAR_MIN,
        })?;

    let cell = ProbeCell::new(basis, budget)?;
    let g1 = big_ratio_f64(minima.lambdas_exact[0].numer(), minima.lambdas_exact[0].denom());
    let g2 = big_ratio_f64(minima.lambdas_exact[1].numer(), minima.lambdas_exact[1].denom());
    // Dyadic seeds just outside the sandwich. lambda_2 <= Q <= lambda_1 +
    // lambda_2 holds for every lattice, and the minima are exact, so after
    // the relative 1e-9 push (which dwarfs the f64 rounding of g1, g2) the
    // endpoints are uncovered resp. covered by that theorem; no probe needed.
    let mut lo = rational_from_f64(g2 * (1.0 - 1e-9))?;
    let mut hi = rational_from_f64((g1 + g2) * (1.0 + 1e-9))?;

    // Float pre-pass: locate the transition approximately, then try to
    // certify a (lo, hi) pair straddling it with two exact probes.
    if let Some(approx) = FloatCell::new(&cell) {
        let mut flo = big_ratio_f64(lo.numer(), lo.denom());
        let mut fhi = big_ratio_f64(hi.numer(), hi.denom());
        let mut alive = true;
        while alive && fhi - flo > 0.25 * tol_f {
            let mid = 0.5 * (flo + fhi);
            match approx.covered(mid) {
                Some(true) => fhi = mid,
                Some(false) => flo = mid,
                None => alive = false,
            }
        }
        if alive {
            let mid = 0.5 * (flo + fhi);
            let p_lo = rational_from_f64(mid - 0.85 * tol_f)?;
            let p_hi = rational_from_f64(mid + 0.85 * tol_f)?;
            if p_lo > lo && p_hi < hi && !cell.covered(&p_lo)? && cell.covered(&p_hi)? {
                lo = p_lo;
                hi = p_hi;
            }
        }
    }

    let two = BigRational::from(BigInt::from(2));
    while &hi - &lo > &two * &tol_r {
        // Dyadic midpoint when one separates the endpoints (always, at these
        // tolerances); the exact midpoint is the fallback, not the rule.
        let mid_f = 0.5 * (big_ratio_f64(lo.numer(), lo.denom())
            + big_ratio_f64(hi.numer(), hi.denom()));
        let mid = rational_from_f64(mid_f)
            .ok()
            .filter(|m| *m > lo && *m < hi)
            .unwrap_or_else(|| (&hi + &lo) / &two);
        if cell.covered(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mid = (&hi + &lo) / &two;
    Ok(CoveringResult {
        value: big_ratio_f64(mid.numer(), mid.denom()) * scale,
        method: CoveringMethod::PlanarExact,
        bracket: (
            big_ratio_f64(lo.numer(), lo.denom()) * scale,
            big_ratio_f64(hi.numer(), hi.denom()) * scale,
        ),
        tol: tol_value,
    })
}

/// Residual between the two independent Q computations for d = 3.
pub fn verify_identity(a: &PrimitivePoint, tol_value: f64, budget: u128) -> Result<f64> {
    if a.dim() != 3 {
        return Err(Error::UnsupportedDimension {
            required: "d = 3",
            got: a.dim(),
        });
    }
    let f = frobenius_number(a)?;
    let basis = frobenius_lattice(a)?;
    let minima = successive_minima(&basis, &Gauge::diff_simplex(2)?, budget)?;
    let numer = BigRational::from(BigInt::from(f.value) + BigInt::from(a.sum()));
    let ident = big_ratio_f64(numer.numer(), numer.denom()) * basis.scale().value();
    let planar = planar_from_minima(&basis, &minima, tol_value / 10.0, budget)?;
    Ok((planar.value - ident).abs())
}

/// Minimum first minimum among lattices whose Q is at most each cutoff:
/// pairs are (q, lambda1); returns (cutoff, min lambda1) for every cutoff
/// with a nonempty bucket. A properness proxy: the minima must stay away
/// from zero.
pub fn compactness_profile(pairs: &[(f64, f64)], cutoffs: &[f64]) -> Result<Vec<(f64, f64)>> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput { what: "q pairs" });
    }
    if cutoffs.is_empty() {
        return Err(Error::BadGrid {
            reason: "no cutoffs",
        });
    }
    if cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadGrid {
            reason: "cutoffs must increase strictly",
        });
    }
    let mut out = Vec::new();
    for &r in cutoffs {
        let m = pairs
            .iter()
            .filter(|(q, _)| *q <= r)
            .map(|(_, l)| *l)
            .fold(f64::INFINITY, f64::min);
        if m.is_finite() {
            out.push((r, m));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exact planar coverage probe.

type RPoint = (BigRational, BigRational);

/// Closed halfplane nx*x + ny*y >= c.
#[derive(Clone)]
struct HalfPlane {
    nx: BigRational,
    ny: BigRational,
    c: BigRational,
}

impl HalfPlane {
    fn side(&self, p: &RPoint) -> BigRational {
        &self.nx * &p.0 + &self.ny * &p.1 - &self.c
    }

    fn complement(&self) -> HalfPlane {
        HalfPlane {
            nx: -self.nx.clone(),
            ny: -self.ny.clone(),
            c: -self.c.clone(),
        }
    }
}

/// Twice the signed shoelace area.
fn area2(poly: &[RPoint]) -> BigRational {
    let n = poly.len();
    if n < 3 {
        return BigRational::zero();
    }
    let mut s = BigRational::zero();
    for i in 0..n {
        let (px, py) = &poly[i];
        let (qx, qy) = &poly[(i + 1) % n];
        s += px * qy - qx * py;
    }
    s
}

/// Clip a convex polygon to a closed halfplane (Sutherland-Hodgman step).
fn clip(poly: &[RPoint], hp: &HalfPlane) -> Vec<RPoint> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut dp = hp.side(&poly[n - 1]);
    for i in 0..n {
        let p = &poly[(i + n - 1) % n];
        let q = &poly[i];
        let dq = hp.side(q);
        if !dp.is_negative() {
            out.push(p.clone());
        }
        if (dp.is_positive() && dq.is_negative()) || (dp.is_negative() && dq.is_positive()) {
            // exact crossing point on segment p-q
            let lam = &dp / (&dp - &dq);
            out.push((
                &p.0 + &lam * (&q.0 - &p.0),
                &p.1 + &lam * (&q.1 - &p.1),
            ));
        }
        dp = dq;
    }
    out
}

/// Convex piece minus a closed triangle, as up to three convex pieces:
/// piece cap H1^c, piece cap H1 cap H2^c, piece cap H1 cap H2 cap H3^c.
fn subtract_triangle(piece: &[RPoint], tri: &[HalfPlane; 3]) -> Vec<Vec<RPoint>> {
    let mut out = Vec::new();
    let mut inside: Vec<RPoint> = piece.to_vec();
    for hp in tri {
        if inside.is_empty() {
            break;
        }
        let outside = clip(&inside, &hp.complement());
        if !area2(&outside).is_zero() {
            out.push(outside);
        }
        inside = clip(&inside, hp);
    }
    out
}

struct ProbeCell {
    /// Reduced basis columns (short vectors keep candidate counts small).
    b1: RPoint,
    b2: RPoint,
    cell: Vec<RPoint>,
    /// Column-major exact inverse of the reduced basis matrix.
    inv: Vec<Vec<BigRational>>,
    centroid: RPoint,
    budget: u128,
}

impl ProbeCell {
    fn new(basis: &RealLatticeBasis, budget: u128) -> Result<ProbeCell> {
        let arr = [
            basis.rational_columns()[0].clone(),
            basis.rational_columns()[1].clone(),
        ];
        let (red, _) = lagrange_reduce(&arr);
        let cols: Vec<Vec<BigRational>> = red.to_vec();
        let inv = rat_inv(&cols)?;
        let b1 = (cols[0][0].clone(), cols[0][1].clone());
        let b2 = (cols[1][0].clone(), cols[1][1].clone());
        let z = BigRational::zero();
        let sum = (&b1.0 + &b2.0, &b1.1 + &b2.1);
        let mut cell = vec![
            (z.clone(), z.clone()),
            b1.clone(),
            sum.clone(),
            b2.clone(),
        ];
        if area2(&cell).is_negative() {
            cell.reverse();
        }
        let two = BigRational::from(BigInt::from(2));
        let centroid = (&sum.0 / &two, &sum.1 / &two);
        Ok(ProbeCell {
            b1,
            b2,
            cell,
            inv,
            centroid,
            budget,
        })
    }

    /// Does the union of t*simplex + v over all lattice v cover the cell?
    /// Exact for rational t. Only translates whose triangle can reach the
    /// cell matter: v must lie in cell + (-t*simplex), and the enclosing box
    /// of that set maps through the exact inverse to a finite (i, j) range.
    fn covered(&self, t: &BigRational) -> Result<bool> {
        if !t.is_positive() {
            return Ok(false);
        }
        let xmin = self.cell.iter().map(|p| &p.0).min().unwrap().clone() - t;
        let xmax = self.cell.iter().map(|p| &p.0).max().unwrap().clone();
        let ymin = self.cell.iter().map(|p| &p.1).min().unwrap().clone() - t;
        let ymax = self.cell.iter().map(|p| &p.1).max().unwrap().clone();
        let corners = [
            (&xmin, &ymin),
            (&xmin, &ymax),
            (&xmax, &ymin),
            (&xmax, &ymax),
        ];
        let mut i_lo: Option<BigRational> = None;
        let mut i_hi: Option<BigRational> = None;
        let mut j_lo: Option<BigRational> = None;
        let mut j_hi: Option<BigRational> = None;
        for (x, y) in corners {
            let ci = &self.inv[0][0] * x + &self.inv[1][0] * y;
            let cj = &self.inv[0][1] * x + &self.inv[1][1] * y;
            min_max(&mut i_lo, &mut i_hi, ci);
            min_max(&mut j_lo, &mut j_hi, cj);
        }
        let i0 = rational_ceil(&i_lo.unwrap());
        let i1 = rational_floor(&i_hi.unwrap());
        let j0 = rational_ceil(&j_lo.unwrap());
        let j1 = rational_floor(&j_hi.unwrap());
        let ni = (&i1 - &i0 + BigInt::one()).max(BigInt::zero());
        let nj = (&j1 - &j0 + BigInt::one()).max(BigInt::zero());
        let count = (&ni * &nj).to_u128().unwrap_or(u128::MAX);
        if count > self.budget {
            return Err(Error::BudgetExceeded {
                required: count,
                budget: self.budget,
            });
        }

        // Nearby triangles first. The order only shapes the intermediate
        // pieces (the final emptiness answer is order-independent), so an
        // approximate, deterministic sort key is enough.
        let f = |r: &BigRational| big_ratio_f64(r.numer(), r.denom());
        let (b1f, b2f) = ((f(&self.b1.0), f(&self.b1.1)), (f(&self.b2.0), f(&self.b2.1)));
        let (cx, cy) = (f(&self.centroid.0), f(&self.centroid.1));
        let mut cands: Vec<(f64, BigInt, BigInt)> = Vec::with_capacity(count as usize);
        let mut i = i0.clone();
        while i <= i1 {
            let mut j = j0.clone();
            while j <= j1 {
                let fi = i.to_f64().unwrap_or(f64::MAX);
                let fj = j.to_f64().unwrap_or(f64::MAX);
                let dx = fi * b1f.0 + fj * b2f.0 - cx;
                let dy = fi * b1f.1 + fj * b2f.1 - cy;
                cands.push((dx * dx + dy * dy, i.clone(), j.clone()));
                j += BigInt::one();
            }
            i += BigInt::one();
        }
        cands.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then_with(|| a.1.cmp(&b.1))
                .then_with(|| a.2.cmp(&b.2))
        });

        // Each piece carries a padded f64 bounding box; triangles whose own
        // padded box misses it cannot change the piece, so the exact clipping
        // is skipped. Padding is generous enough to absorb the conversions,
        // keeping the skip conservative.
        let tf = f(t);
        let mut pieces: Vec<(Vec<RPoint>, BBox)> =
            vec![(self.cell.clone(), bbox_of(&self.cell))];
        for (_, i, j) in &cands {
            let fi = i.to_f64().unwrap_or(f64::MAX);
            let fj = j.to_f64().unwrap_or(f64::MAX);
            let vxf = fi * b1f.0 + fj * b2f.0;
            let vyf = fi * b1f.1 + fj * b2f.1;
            let tri_box = padded(vxf, vxf + tf, vyf, vyf + tf);
            if !pieces.iter().any(|(_, pb)| pb.overlaps(&tri_box)) {
                continue;
            }
            let ir = BigRational::from(i.clone());
            let jr = BigRational::from(j.clone());
            let vx = &ir * &self.b1.0 + &jr * &self.b2.0;
            let vy = &ir * &self.b1.1 + &jr * &self.b2.1;
            let tri = triangle_halfplanes(&(vx, vy), t);
            let mut next = Vec::with_capacity(pieces.len() + 2);
            for (piece, pb) in pieces {
                if !pb.overlaps(&tri_box) {
                    next.push((piece, pb));
                    continue;
                }
                for cut in subtract_triangle(&piece, &tri) {
                    let bb = bbox_of(&cut);
                    next.push((cut, bb));
                }
            }
            pieces = next;
            if pieces.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// f64 replica of the coverage probe. Purely advisory: it steers where the
/// exact probes go, so its only failure mode is wasted exact work. `None`
/// answers mean "no opinion" (degenerate float data or too many pieces).
struct FloatCell {
    b1: (f64, f64),
    b2: (f64, f64),
    cell: Vec<(f64, f64)>,
    inv: [[f64; 2]; 2],
    centroid: (f64, f64),
    sliver: f64,
}

const FLOAT_CANDIDATE_CAP: usize = 4096;
const FLOAT_PIECE_CAP: usize = 512;

impl FloatCell {
    fn new(cell: &ProbeCell) -> Option<FloatCell> {
        let f = |r: &BigRational| big_ratio_f64(r.numer(), r.denom());
        let cellf: Vec<(f64, f64)> = cell.cell.iter().map(|p| (f(&p.0), f(&p.1))).collect();
        let area = area2_f(&cellf).abs();
        if !(area.is_finite() && area > 0.0) {
            return None;
        }
        Some(FloatCell {
            b1: (f(&cell.b1.0), f(&cell.b1.1)),
            b2: (f(&cell.b2.0), f(&cell.b2.1)),
            cell: cellf,
            inv: [
                [f(&cell.inv[0][0]), f(&cell.inv[0][1])],
                [f(&cell.inv[1][0]), f(&cell.inv[1][1])],
            ],
            centroid: (f(&cell.centroid.0), f(&cell.centroid.1)),
            sliver: area * 1e-12,
        })
    }

    fn covered(&self, t: f64) -> Option<bool> {
        if !(t.is_finite() && t > 0.0) {
            return Some(false);
        }
        let xs: Vec<f64> = self.cell.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = self.cell.iter().map(|p| p.1).collect();
        let fold_min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
        let fold_max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let corners = [
            (fold_min(&xs) - t, fold_min(&ys) - t),
            (fold_min(&xs) - t, fold_max(&ys)),
            (fold_max(&xs), fold_min(&ys) - t),
            (fold_max(&xs), fold_max(&ys)),
        ];
        let mut i_lo = f64::INFINITY;
        let mut i_hi = f64::NEG_INFINITY;
        let mut j_lo = f64::INFINITY;
        let mut j_hi = f64::NEG_INFINITY;
        for (x, y) in corners {
            let ci = self.inv[0][0] * x + self.inv[1][0] * y;
            let cj = self.inv[0][1] * x + self.inv[1][1] * y;
            i_lo = i_lo.min(ci);
            i_hi = i_hi.max(ci);
            j_lo = j_lo.min(cj);
            j_hi = j_hi.max(cj);
        }
        if !(i_lo.is_finite() && i_hi.is_finite() && j_lo.is_finite() && j_hi.is_finite()) {
            return None;
        }
        let (i0, i1) = (i_lo.ceil() as i64 - 1, i_hi.floor() as i64 + 1);
        let (j0, j1) = (j_lo.ceil() as i64 - 1, j_hi.floor() as i64 + 1);
        let ni = (i1 - i0 + 1).max(0) as usize;
        let nj = (j1 - j0 + 1).max(0) as usize;
        if ni.saturating_mul(nj) > FLOAT_CANDIDATE_CAP {
            return None;
        }
        let mut cands: Vec<(f64, (f64, f64))> = Vec::with_capacity(ni * nj);
        for i in i0..=i1 {
            for j in j0..=j1 {
                let vx = i as f64 * self.b1.0 + j as f64 * self.b2.0;
                let vy = i as f64 * self.b1.1 + j as f64 * self.b2.1;
                let dx = vx - self.centroid.0;
                let dy = vy - self.centroid.1;
                cands.push((dx * dx + dy * dy, (vx, vy)));
            }
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut pieces: Vec<Vec<(f64, f64)>> = vec![self.cell.clone()];
        for (_, v) in &cands {
            let tri = triangle_halfplanes_f(*v, t);
            let mut next = Vec::with_capacity(pieces.len() + 2);
            for piece in &pieces {
                subtract_triangle_f(piece, &tri, self.sliver, &mut next);
            }
            pieces = next;
            if pieces.is_empty() {
                return Some(true);
            }
            if pieces.len() > FLOAT_PIECE_CAP {
                return None;
            }
        }
        Some(false)
    }
}

fn area2_f(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let (px, py) = poly[i];
        let (qx, qy) = poly[(i + 1) % n];
        s += px * qy - qx * py;
    }
    s
}

/// Halfplane as (nx, ny, c) meaning nx*x + ny*y >= c.
fn clip_f(poly: &[(f64, f64)], hp: (f64, f64, f64)) -> Vec<(f64, f64)> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let side = |p: &(f64, f64)| hp.0 * p.0 + hp.1 * p.1 - hp.2;
    let mut out = Vec::with_capacity(n + 1);
    let mut dp = side(&poly[n - 1]);
    for i in 0..n {
        let p = poly[(i + n - 1) % n];
        let q = poly[i];
        let dq = side(&q);
        if dp >= 0.0 {
            out.push(p);
        }
        if (dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0) {
            let lam = dp / (dp - dq);
            out.push((p.0 + lam * (q.0 - p.0), p.1 + lam * (q.1 - p.1)));
        }
        dp = dq;
    }
    out
}

fn subtract_triangle_f(
    piece: &[(f64, f64)],
    tri: &[(f64, f64, f64); 3],
    sliver: f64,
    out: &mut Vec<Vec<(f64, f64)>>,
) {
    let mut inside: Vec<(f64, f64)> = piece.to_vec();
    for hp in tri {
        if inside.is_empty() {
            break;
        }
        let outside = clip_f(&inside, (-hp.0, -hp.1, -hp.2));
        if area2_f(&outside).abs() > sliver {
            out.push(outside);
        }
        inside = clip_f(&inside, *hp);
    }
}

fn triangle_halfplanes_f(v: (f64, f64), t: f64) -> [(f64, f64, f64); 3] {
    let a = v;
    let b = (v.0 + t, v.1);
    let c = (v.0, v.1 + t);
    [edge_f(a, b), edge_f(b, c), edge_f(c, a)]
}

fn edge_f(p: (f64, f64), q: (f64, f64)) -> (f64, f64, f64) {
    let nx = p.1 - q.1;
    let ny = q.0 - p.0;
    (nx, ny, nx * p.0 + ny * p.1)
}

/// Closed padded rectangle in f64; used only to rule out interactions.
#[derive(Clone, Copy)]
struct BBox {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl BBox {
    fn overlaps(&self, o: &BBox) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }
}

fn padded(x0: f64, x1: f64, y0: f64, y1: f64) -> BBox {
    let m = x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs());
    let pad = 1e-9 * (1.0 + m);
    BBox {
        x0: x0 - pad,
        x1: x1 + pad,
        y0: y0 - pad,
        y1: y1 + pad,
    }
}

fn bbox_of(poly: &[RPoint]) -> BBox {
    let mut x0 = f64::INFINITY;
    let mut x1 = f64::NEG_INFINITY;
    let mut y0 = f64::INFINITY;
    let mut y1 = f64::NEG_INFINITY;
    for (x, y) in poly {
        let xf = big_ratio_f64(x.numer(), x.denom());
        let yf = big_ratio_f64(y.numer(), y.denom());
        x0 = x0.min(xf);
        x1 = x1.max(xf);
        y0 = y0.min(yf);
        y1 = y1.max(yf);
    }
    padded(x0, x1, y0, y1)
}

fn min_max(lo: &mut Option<BigRational>, hi: &mut Option<BigRational>, v: BigRational) {
    match lo {
        Some(l) if *l <= v => {}
        _ => *lo = Some(v.clone()),
    }
    match hi {
        Some(h) if *h >= v => {}
        _ => *hi = Some(v),
    }
}

/// Halfplanes of the closed triangle with vertices v, v+(t,0), v+(0,t),
/// oriented so the inside is nonnegative.
fn triangle_halfplanes(v: &RPoint, t: &BigRational) -> [HalfPlane; 3] {
    let a = v.clone();
    let b = (&v.0 + t, v.1.clone());
    let c = (v.0.clone(), &v.1 + t);
    [edge(&a, &b), edge(&b, &c), edge(&c, &a)]
}

/// Closed halfplane left of the directed edge p -> q.
fn edge(p: &RPoint, q: &RPoint) -> HalfPlane {
    let nx = &p.1 - &q.1;
    let ny = &q.0 - &p.0;
    let c = &nx * &p.0 + &ny * &p.1;
    HalfPlane { nx, ny, c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexgeom::DEFAULT_MINIMA_BUDGET;
    use crate::lattice::Scale;

    const BUDGET: u128 = DEFAULT_MINIMA_BUDGET;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn diag(a: (i64, i64), b: (i64, i64)) -> RealLatticeBasis {
        RealLatticeBasis::from_parts(
            vec![
                vec![rat(a.0, a.1), rat(0, 1)],
                vec![rat(0, 1), rat(b.0, b.1)],
            ],
            Scale::one(),
        )
        .unwrap()
    }

    fn pt(v: &[u64]) -> PrimitivePoint {
        PrimitivePoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_values_match_known_cases() {
        let r = covering_radius_via_frobenius(&pt(&[1, 1, 1]), BUDGET).unwrap();
        assert_eq!(r.method, CoveringMethod::FrobeniusIdentity);
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
        let r = covering_radius_via_frobenius(&pt(&[2, 3, 5]), BUDGET).unwrap();
        assert!((r.value - 11.0 / 30f64.sqrt()).abs() < 1e-12);
        assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
        let r = covering_radius_via_frobenius(&pt(&[3, 4, 5]), BUDGET).unwrap();
        assert!((r.value - 14.0 / 60f64.sqrt()).abs() < 1e-12);
        // d = 2 collapses to the constant statistic 1
        let r = covering_radius_via_frobenius(&pt(&[2, 3]), BUDGET).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn planar_covering_radius_of_unit_lattice() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let r = covering_radius_planar(&z2, 1e-6, BUDGET).unwrap();
        assert_eq!(r.method, CoveringMethod::PlanarExact);
        assert!((r.value - 2.0).abs() < 1e-6);
        assert!(r.bracket.1 - r.bracket.0 <= 2e-6);
        assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
    }

    #[test]
    fn planar_attains_minima_sum_on_stretched_lattice() {
        let b = diag((2, 1), (1, 2));
        let r = covering_radius_planar(&b, 1e-6, BUDGET).unwrap();
        assert!((r.value - 2.5).abs() < 1e-6);
        let (lo, hi) = covering_bounds(&b, BUDGET).unwrap();
        assert!((lo - 2.0).abs() < 1e-12);
        assert!((hi - 2.5).abs() < 1e-12);
        assert!(lo <= r.value + 1e-9 && r.value <= hi + 1e-9);
    }

    #[test]
    fn covering_bounds_of_unit_lattice() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let (lo, hi) = covering_bounds(&z2, BUDGET).unwrap();
        assert!((lo - 1.0).abs() < 1e-12);
        assert!((hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coverage_probe_is_exact_at_the_transition() {
        // Q(Z^2) = 2 exactly; the closed cover kicks in at t = 2.
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let cell = ProbeCell::new(&z2, BUDGET).unwrap();
        assert!(cell.covered(&rat(2, 1)).unwrap());
        assert!(!cell.covered(&rat(1999, 1000)).unwrap());
        assert!(cell.covered(&rat(3, 1)).unwrap());
        assert!(!cell.covered(&rat(0, 1)).unwrap());
    }

    #[test]
    fn identity_cross_validation_for_small_points() {
        for coords in [[1u64, 1, 1], [2, 3, 5], [3, 4, 5], [6, 9, 20], [2, 3, 7]] {
            let res = verify_identity(&pt(&coords), 1e-6, BUDGET).unwrap();
            assert!(res < 1e-6, "residual {res} too large for {coords:?}");
        }
    }

    #[test]
    fn sandwich_only_wraps_identity_for_higher_rank() {
        let p = pt(&[3, 5, 7, 11]);
        let r = covering_radius_sandwich_only(&p, BUDGET).unwrap();
        assert_eq!(r.method, CoveringMethod::SandwichOnly);
        assert!(r.bracket.0 <= r.value + 1e-9);
        assert!(r.value <= r.bracket.1 + 1e-9);
    }

    #[test]
    fn planar_rejects_bad_inputs() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        assert!(matches!(
            covering_radius_planar(&z2, 1e-13, BUDGET),
            Err(Error::ToleranceTooSmall { .. })
        ));
        assert!(matches!(
            covering_radius_planar(&z2, 0.0, BUDGET),
            Err(Error::NonPositive { .. })
        ));
        let z3 = RealLatticeBasis::standard(3).unwrap();
        assert!(matches!(
            covering_radius_planar(&z3, 1e-6, BUDGET),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert!(matches!(
            verify_identity(&pt(&[3, 5, 7, 11]), 1e-6, BUDGET),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn polygon_primitives_are_exact() {
        let sq = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(1, 1), rat(1, 1)),
            (rat(0, 1), rat(1, 1)),
        ];
        assert_eq!(area2(&sq), rat(2, 1));
        // clip to x >= 1/2
        let hp = HalfPlane {
            nx: rat(1, 1),
            ny: rat(0, 1),
            c: rat(1, 2),
        };
        let half = clip(&sq, &hp);
        assert_eq!(area2(&half), rat(1, 1));
        // subtracting a triangle that contains the square empties it
        let tri = triangle_halfplanes(&(rat(-5, 1), rat(-5, 1)), &rat(100, 1));
        assert!(subtract_triangle(&sq, &tri).is_empty());
        // subtracting a far-away triangle changes nothing
        let far = triangle_halfplanes(&(rat(50, 1), rat(50, 1)), &rat(1, 1));
        let rest = subtract_triangle(&sq, &far);
        let total: BigRational = rest.iter().map(|p| area2(p)).fold(rat(0, 1), |s, a| s + a);
        assert_eq!(total, rat(2, 1));
    }

    #[test]
    fn compactness_profile_reports_positive_minima() {
        let pairs = vec![(2.0, 0.9), (2.5, 0.7), (4.0, 0.3), (9.0, 0.2)];
        let prof = compactness_profile(&pairs, &[3.0, 5.0, 10.0]).unwrap();
        assert_eq!(prof.len(), 3);
        assert!((prof[0].1 - 0.7).abs() < 1e-15);
        assert!((prof[1].1 - 0.3).abs() < 1e-15);
        assert!((prof[2].1 - 0.2).abs() < 1e-15);
        assert!(prof.iter().all(|(_, m)| *m > 0.0));
        assert!(compactness_profile(&pairs, &[3.0, 3.0]).is_err());
        assert!(compactness_profile(&[], &[1.0]).is_err());
    }
}
