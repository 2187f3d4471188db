//! Integer and real lattice bases for the lattices attached to a primitive
//! vector `a` (sorted so the largest coordinate is last):
//!
//! * the integer lattice `{ b in Z^(d-1) : sum_i a_i b_i = 0 mod a_d }`,
//!   determinant a_d, kept in a canonical lower-triangular Hermite form;
//! * its determinant-one normalization, reached by scaling coordinate i by
//!   a_i and the whole space by (prod a_i)^(-1/(d-1));
//! * the same lattice built a second, independent way: transform Z^d by a
//!   diagonal-times-shear group element and slice along the hyperplane where
//!   the last coordinate vanishes.
//!
//! Real bases are stored exactly as a rational matrix times one shared
//! irrational scale base^(1/root), so equality of lattices coming out of the
//! two constructions is decided by exact arithmetic, not tolerances.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
// Required for no_std float math; tests link std whose inherent
// methods shadow it, leaving the import idle there.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, Zero};

use crate::domains::PrimitivePoint;
use crate::error::{Error, Result};
use crate::numeric::{
    big_ratio_f64, mat_det_f64, mat_inv_f64, mat_mul_f64, rational_root_f64, rational_round,
};

// ---------------------------------------------------------------------------
// Integer matrices (column-major: cols[j][i] is row i of basis vector j).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    cols: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_columns(cols: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = cols.len();
        if n == 0 {
            return Err(Error::EmptyInput { what: "matrix" });
        }
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cols.iter().map(|c| c.len()).max().unwrap_or(0),
            });
        }
        Ok(IntMatrix { n, cols })
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { n, cols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.cols[col][row]
    }

    /// Fraction-free (Bareiss) determinant; exact.
    pub fn det(&self) -> BigInt {
        // det(M) = det(M^T), so eliminating over the column vectors works.
        let mut m: Vec<Vec<BigInt>> = self.cols.clone();
        let n = self.n;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Canonical lower-triangular Hermite form of the lattice spanned by the
    /// columns: column j is zero above row j, diagonal entries positive, and
    /// in each row the entries left of the diagonal are reduced into
    /// [0, diagonal). Column operations only, so the lattice is unchanged.
    /// Errors if the columns are not linearly independent.
    pub fn hnf_lower(&self) -> Result<IntMatrix> {
        let n = self.n;
        let mut c = self.cols.clone();
        for r in 0..n {
            // Fold all nonzero entries of row r (columns >= r) into column r.
            for j in r + 1..n {
                if c[j][r].is_zero() {
                    continue;
                }
                let (g, x, y) = xgcd(&c[r][r], &c[j][r]);
                let fr = &c[r][r] / &g;
                let fj = &c[j][r] / &g;
                for i in 0..n {
                    let new_r = &c[r][i] * &x + &c[j][i] * &y;
                    let new_j = &c[j][i] * &fr - &c[r][i] * &fj;
                    c[r][i] = new_r;
                    c[j][i] = new_j;
                }
            }
            if c[r][r].is_zero() {
                return Err(Error::SingularMatrix);
            }
            if c[r][r].is_negative() {
                for v in c[r].iter_mut() {
                    *v = -v.clone();
                }
            }
            // Reduce earlier columns at row r into [0, pivot).
            for j in 0..r {
                let q = c[j][r].div_floor(&c[r][r]);
                if !q.is_zero() {
                    for i in 0..n {
                        let t = &c[j][i] - &q * &c[r][i];
                        c[j][i] = t;
                    }
                }
            }
        }
        Ok(IntMatrix { n, cols: c })
    }
}

/// extended gcd with g >= 0 and x*a + y*b = g.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Unimodular column operations sending the row vector `v` to (0,...,0,g):
/// returns (columns of U, g) with v * U = (0,...,0,g), g = gcd >= 0.
pub fn unimodular_clear(v: &[BigInt]) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = v.len();
    let mut u = IntMatrix::identity(n).cols;
    let mut cur: Vec<BigInt> = v.to_vec();
    for i in 0..n.saturating_sub(1) {
        if cur[i].is_zero() {
            continue;
        }
        let (g, x, y) = xgcd(&cur[i], &cur[i + 1]);
        let fi = &cur[i] / &g;
        let fj = &cur[i + 1] / &g;
        let (a, b) = {
            let (left, right) = u.split_at_mut(i + 1);
            (&mut left[i], &mut right[0])
        };
        for r in 0..n {
            // invariant: v . u_j = cur[j]; the new pair keeps det +1
            let keep = &a[r] * &x + &b[r] * &y;
            let kill = &a[r] * &fj - &b[r] * &fi;
            a[r] = kill;
            b[r] = keep;
        }
        cur[i + 1] = g;
        cur[i] = BigInt::zero();
    }
    let g = cur[n - 1].clone();
    (u, g)
}

// ---------------------------------------------------------------------------
// Exact real bases: rational matrix times base^(1/root).

/// The positive irrational scalar base^(1/root), kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    base: BigRational,
    root: u32,
}

impl Scale {
    pub fn new(base: BigRational, root: u32) -> Result<Self> {
        if root == 0 {
            return Err(Error::NonPositive {
                name: "scale root order",
            });
        }
        if !base.is_positive() {
            return Err(Error::NonPositive { name: "scale base" });
        }
        // Canonical form: a trivial base needs no root.
        let root = if base.is_one() { 1 } else { root };
        Ok(Scale { base, root })
    }

    pub fn one() -> Self {
        Scale {
            base: BigRational::one(),
            root: 1,
        }
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// base^(1/root) rounded to f64, via guarded integer roots.
    pub fn value(&self) -> f64 {
        if self.root == 1 {
            return big_ratio_f64(self.base.numer(), self.base.denom());
        }
        rational_root_f64(
            self.base.numer().magnitude(),
            self.base.denom().magnitude(),
            self.root,
        )
    }

    /// Exact value of scale^n when the root order divides n.
    pub fn pow_exact(&self, n: u32) -> Option<BigRational> {
        if n % self.root == 0 {
            Some(pow_rational(&self.base, (n / self.root) as i32))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Scale {
        Scale {
            base: self.base.recip(),
            root: self.root,
        }
    }
}

fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let mut out = BigRational::one();
    let b = if e >= 0 { x.clone() } else { x.recip() };
    for _ in 0..e.unsigned_abs() {
        out *= &b;
    }
    out
}

/// A lattice basis `scale * R` with R an exact rational matrix whose columns
/// are the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLatticeBasis {
    n: usize,
    cols: Vec<Vec<BigRational>>,
    scale: Scale,
}

impl RealLatticeBasis {
    pub fn from_parts(cols: Vec<Vec<BigRational>>, scale: Scale) -> Result<Self> {
        let n = cols.len();
        if n == 0 {
            return Err(Error::EmptyInput { what: "basis" });
        }
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cols.iter().map(|c| c.len()).max().unwrap_or(0),
            });
        }
        let b = RealLatticeBasis { n, cols, scale };
        if rat_det(&b.cols).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(b)
    }

    /// Z^n.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput { what: "basis" });
        }
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(RealLatticeBasis {
            n,
            cols,
            scale: Scale::one(),
        })
    }

    pub fn from_integer(m: &IntMatrix, scale: Scale) -> Result<Self> {
        let cols = m
            .columns()
            .iter()
            .map(|c| c.iter().map(|v| BigRational::from(v.clone())).collect())
            .collect();
        RealLatticeBasis::from_parts(cols, scale)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rational_columns(&self) -> &[Vec<BigRational>] {
        &self.cols
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    /// Row-major f64 matrix (basis vectors are the columns).
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        let s = self.scale.value();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| big_ratio_f64(self.cols[j][i].numer(), self.cols[j][i].denom()) * s)
                    .collect()
            })
            .collect()
    }

    /// The lattice vector with the given integer coordinates, in f64.
    pub fn vector(&self, coeffs: &[i64]) -> Vec<f64> {
        let s = self.scale.value();
        let mut out = vec![0.0; self.n];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 0..self.n {
                out[i] += c as f64 * big_ratio_f64(self.cols[j][i].numer(), self.cols[j][i].denom());
            }
        }
        for v in out.iter_mut() {
            *v *= s;
        }
        out
    }

    /// Exact determinant when scale^n is rational (true for every basis this
    /// crate constructs), else None.
    pub fn det_exact(&self) -> Option<BigRational> {
        let sp = self.scale.pow_exact(self.n as u32)?;
        Some(rat_det(&self.cols) * sp)
    }

    pub fn det_f64(&self) -> f64 {
        match self.det_exact() {
            Some(d) => big_ratio_f64(d.numer(), d.denom()),
            None => mat_det_f64(&self.to_f64()),
        }
    }

    /// Dual basis: inverse transpose, exact.
    pub fn dual(&self) -> Result<RealLatticeBasis> {
        let inv = rat_inv(&self.cols)?;
        // inv is column-major for R^-1; columns of R^-T are the rows of R^-1.
        let n = self.n;
        let cols = (0..n)
            .map(|j| (0..n).map(|i| inv[i][j].clone()).collect())
            .collect();
        RealLatticeBasis::from_parts(cols, self.scale.inverse())
    }
}

/// Exact determinant of a column-major rational matrix.
pub(crate) fn rat_det(cols: &[Vec<BigRational>]) -> BigRational {
    let n = cols.len();
    let mut m: Vec<Vec<BigRational>> = cols.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    det = -det;
                }
                None => return BigRational::zero(),
            }
        }
        det *= m[k][k].clone();
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let t = &m[i][j] - &f * &m[k][j];
                m[i][j] = t;
            }
        }
    }
    det
}

/// Exact inverse of a column-major rational matrix (result column-major).
pub(crate) fn rat_inv(cols: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = cols.len();
    // Row-major copies for the elimination.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t1 = &a[r][j] - &f * &a[col][j];
                    a[r][j] = t1;
                    let t2 = &inv[r][j] - &f * &inv[col][j];
                    inv[r][j] = t2;
                }
            }
        }
    }
    // Back to column-major.
    let out = (0..n)
        .map(|j| (0..n).map(|i| inv[i][j].clone()).collect())
        .collect();
    Ok(out)
}

pub(crate) fn rat_mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    // Column-major: (AB) col j = A * (b col j).
    let n = a.len();
    b.iter()
        .map(|bj| {
            let mut out = vec![BigRational::zero(); n];
            for (k, bkj) in bj.iter().enumerate() {
                if bkj.is_zero() {
                    continue;
                }
                for i in 0..n {
                    if !a[k][i].is_zero() {
                        let t = &out[i] + &a[k][i] * bkj;
                        out[i] = t;
                    }
                }
            }
            out
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The two constructions.

/// Canonical basis of `{ b in Z^(d-1) : sum_{i<d} a_i b_i = 0 mod a_d }`
/// where a is the sorted coordinate vector of the point. Determinant a_d.
pub fn congruence_lattice(a: &PrimitivePoint) -> Result<IntMatrix> {
    let sorted = a.sorted_coords();
    let d = sorted.len();
    let ad = BigInt::from(sorted[d - 1]);
    let rest: Vec<BigInt> = sorted[..d - 1].iter().map(|&v| BigInt::from(v)).collect();
    // Send `rest` to (0,...,0,g) by unimodular column ops; the kernel of
    // b -> rest.b mod a_d is then U * (Z^(n-1) x a_d Z) because gcd(g, a_d)
    // divides gcd(a) = 1.
    let (mut u, g) = unimodular_clear(&rest);
    debug_assert!(g.gcd(&ad).is_one());
    let n = rest.len();
    for v in u[n - 1].iter_mut() {
        *v *= &ad;
    }
    let m = IntMatrix::from_columns(u)?;
    let h = m.hnf_lower()?;
    debug_assert_eq!(h.det().magnitude(), ad.magnitude());
    Ok(h)
}

/// Shared tail of both normalized constructions: scale row i by sorted a_i
/// and the whole space by (prod a)^(-1/(d-1)).
fn normalize(a: &PrimitivePoint, kernel_cols: Vec<Vec<BigInt>>) -> Result<RealLatticeBasis> {
    let sorted = a.sorted_coords();
    let n = sorted.len() - 1;
    let cols: Vec<Vec<BigRational>> = kernel_cols
        .into_iter()
        .map(|c| {
            c.into_iter()
                .enumerate()
                .map(|(i, v)| BigRational::from(v * BigInt::from(sorted[i])))
                .collect()
        })
        .collect();
    let prod = BigRational::from(BigInt::from(a.product()));
    let scale = Scale::new(prod.recip(), n as u32)?;
    let basis = RealLatticeBasis::from_parts(cols, scale)?;
    let det = basis.det_exact().expect("root order divides dimension");
    if !det.clone().abs().is_one() {
        return Err(Error::NotUnimodular {
            det: big_ratio_f64(det.numer(), det.denom()),
        });
    }
    Ok(basis)
}

/// Determinant-one lattice attached to `a`: congruence kernel, coordinates
/// rescaled. The covering radius of the standard simplex for this lattice
/// equals (F(a) + sum a) / (prod a)^(1/(d-1)).
pub fn frobenius_lattice(a: &PrimitivePoint) -> Result<RealLatticeBasis> {
    let m = congruence_lattice(a)?;
    normalize(a, m.columns().to_vec())
}

/// The same lattice by the independent route: take the integer kernel of
/// the full vector (a_1,...,a_d) in Z^d, i.e. the exact lattice vectors that
/// the diagonal-shear group element sends into the hyperplane x_d = 0, and
/// read off the first d-1 coordinates. The group element's top block scales
/// coordinate i by a_i (prod a)^(-1/(d-1)), which is what `normalize` does.
pub fn frobenius_lattice_intersection(a: &PrimitivePoint) -> Result<RealLatticeBasis> {
    let sorted = a.sorted_coords();
    let d = sorted.len();
    let v: Vec<BigInt> = sorted.iter().map(|&x| BigInt::from(x)).collect();
    let (u, g) = unimodular_clear(&v);
    if !g.is_one() {
        return Err(Error::NotPrimitive);
    }
    // Columns 0..d-2 of U span the kernel of v.
    let mut kernel_top: Vec<Vec<BigInt>> = Vec::with_capacity(d - 1);
    for col in &u[..d - 1] {
        let dot: BigInt = col
            .iter()
            .zip(&v)
            .map(|(c, vi)| c * vi)
            .fold(BigInt::zero(), |s, t| s + t);
        debug_assert!(dot.is_zero());
        if !dot.is_zero() {
            return Err(Error::SingularMatrix);
        }
        kernel_top.push(col[..d - 1].to_vec());
    }
    normalize(a, kernel_top)
}

/// Decide whether two bases generate the same lattice. When both bases share
/// the same exact scale the decision is exact: B1^-1 B2 must be an integer
/// matrix of determinant +-1. Otherwise the change of basis is computed in
/// f64 and entries must sit within `tol` of integers (and the rounded matrix
/// must be unimodular).
pub fn lattice_equal(b1: &RealLatticeBasis, b2: &RealLatticeBasis, tol: f64) -> Result<bool> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch {
            expected: b1.dim(),
            got: b2.dim(),
        });
    }
    if b1.scale == b2.scale {
        let c = rat_mat_mul(&rat_inv(&b1.cols)?, &b2.cols);
        let integral = c.iter().flatten().all(|x| x.is_integer());
        if !integral {
            return Ok(false);
        }
        let det = rat_det(&c);
        return Ok(det.abs().is_one());
    }
    let inv = mat_inv_f64(&b1.to_f64())?;
    let c = mat_mul_f64(&inv, &b2.to_f64());
    let n = b1.dim();
    let mut rounded: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let r = c[i][j].round();
            if (c[i][j] - r).abs() > tol {
                return Ok(false);
            }
            rounded[j][i] = BigInt::from(r as i64);
        }
    }
    let det = IntMatrix::from_columns(rounded)?.det();
    Ok(det.magnitude().is_one())
}

/// Exact Lagrange (Gauss) reduction of a rank-2 rational basis. Returns the
/// reduced columns and the unimodular coefficient matrix V (column-major)
/// with reduced = original * V, so witness coordinates can be mapped back.
pub fn lagrange_reduce(
    cols: &[Vec<BigRational>; 2],
) -> ([Vec<BigRational>; 2], [[BigInt; 2]; 2]) {
    let mut b1 = cols[0].clone();
    let mut b2 = cols[1].clone();
    // V column-major: v[j] = coefficients of reduced_j in the original basis.
    let mut v = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    let dot = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        &x[0] * &y[0] + &x[1] * &y[1]
    };
    loop {
        if dot(&b1, &b1) > dot(&b2, &b2) {
            core::mem::swap(&mut b1, &mut b2);
            v.swap(0, 1);
        }
        let n1 = dot(&b1, &b1);
        if n1.is_zero() {
            break; // degenerate; caller validates rank separately
        }
        let mu = rational_round(&(dot(&b1, &b2) / &n1));
        if mu.is_zero() {
            break;
        }
        let mu_rat = BigRational::from(mu.clone());
        b2[0] = &b2[0] - &mu_rat * &b1[0];
        b2[1] = &b2[1] - &mu_rat * &b1[1];
        let t0 = &v[1][0] - &mu * &v[0][0];
        let t1 = &v[1][1] - &mu * &v[0][1];
        v[1] = [t0, t1];
        if dot(&b2, &b2) >= dot(&b1, &b1) {
            break;
        }
    }
    if dot(&b1, &b1) > dot(&b2, &b2) {
        core::mem::swap(&mut b1, &mut b2);
        v.swap(0, 1);
    }
    ([b1, b2], v)
}

// ---------------------------------------------------------------------------
// Group elements (f64; the exact paths above never go through these).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupElementKind {
    /// diag(t^(-1/(n-1)), ..., t^(-1/(n-1)), t)
    Dilation,
    /// identity with prescribed bottom row
    Shear,
    /// (prod y)^(-1/n) diag(y), determinant one
    NormalizedDiag,
    /// block diag(NormalizedDiag(y), 1)
    NormalizedDiagBlock,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub kind: GroupElementKind,
    /// Row-major square matrix.
    pub mat: Vec<Vec<f64>>,
}

impl GroupElement {
    pub fn dim(&self) -> usize {
        self.mat.len()
    }

    pub fn det(&self) -> f64 {
        mat_det_f64(&self.mat)
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        Ok(GroupElement {
            kind: GroupElementKind::General,
            mat: mat_mul_f64(&self.mat, &rhs.mat),
        })
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(self
            .mat
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// diag(t^(-1/(dim-1)) I_(dim-1), t); determinant one by construction.
pub fn dilation(dim: usize, t: f64) -> Result<GroupElement> {
    if dim < 2 {
        return Err(Error::TooFewCoordinates { got: dim });
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonPositive {
            name: "dilation parameter",
        });
    }
    let s = t.powf(-1.0 / (dim as f64 - 1.0));
    let mut mat = vec![vec![0.0; dim]; dim];
    for (i, row) in mat.iter_mut().enumerate().take(dim - 1) {
        row[i] = s;
    }
    mat[dim - 1][dim - 1] = t;
    Ok(GroupElement {
        kind: GroupElementKind::Dilation,
        mat,
    })
}

/// Identity with bottom row (x_1, ..., x_n, 1); dimension n+1.
pub fn shear(x: &[f64]) -> Result<GroupElement> {
    if x.is_empty() {
        return Err(Error::EmptyInput { what: "shear row" });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonPositive {
            name: "shear coefficients (must be finite)",
        });
    }
    let dim = x.len() + 1;
    let mut mat = vec![vec![0.0; dim]; dim];
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (j, &v) in x.iter().enumerate() {
        mat[dim - 1][j] = v;
    }
    Ok(GroupElement {
        kind: GroupElementKind::Shear,
        mat,
    })
}

/// (prod y)^(-1/n) diag(y) for strictly positive y; determinant one.
pub fn normalized_diag(y: &[f64]) -> Result<GroupElement> {
    if y.is_empty() {
        return Err(Error::EmptyInput { what: "diagonal" });
    }
    if y.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
        return Err(Error::NonPositive {
            name: "diagonal entries",
        });
    }
    let n = y.len();
    let prod: f64 = y.iter().product();
    let s = prod.powf(-1.0 / n as f64);
    let mut mat = vec![vec![0.0; n]; n];
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = s * y[i];
    }
    Ok(GroupElement {
        kind: GroupElementKind::NormalizedDiag,
        mat,
    })
}

/// Block diagonal of `normalized_diag(y)` and a trailing 1; dimension n+1.
pub fn normalized_diag_block(y: &[f64]) -> Result<GroupElement> {
    let inner = normalized_diag(y)?;
    let n = y.len();
    let mut mat = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..n {
        mat[i][..n].copy_from_slice(&inner.mat[i]);
    }
    mat[n][n] = 1.0;
    Ok(GroupElement {
        kind: GroupElementKind::NormalizedDiagBlock,
        mat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    fn pt(v: &[u64]) -> PrimitivePoint {
        PrimitivePoint::new(v.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hnf_canonical_examples() {
        // (1,1,2): congruence lattice has columns (1,1) and (0,2).
        let m = congruence_lattice(&pt(&[1, 1, 2])).unwrap();
        assert_eq!(m.columns()[0], vec![int(1), int(1)]);
        assert_eq!(m.columns()[1], vec![int(0), int(2)]);
        // (2,3,5): columns (1,1) and (0,5).
        let m = congruence_lattice(&pt(&[2, 3, 5])).unwrap();
        assert_eq!(m.columns()[0], vec![int(1), int(1)]);
        assert_eq!(m.columns()[1], vec![int(0), int(5)]);
        assert_eq!(m.det(), int(5));
    }

    #[test]
    fn congruence_lattice_membership_and_det() {
        for coords in [
            [2u64, 3, 5],
            [6, 9, 20],
            [4, 6, 9],
            [3, 7, 8],
            [5, 5, 7],
        ] {
            let p = pt(&coords);
            let s = p.sorted_coords();
            let ad = s[s.len() - 1];
            let m = congruence_lattice(&p).unwrap();
            assert_eq!(m.det().magnitude(), BigInt::from(ad).magnitude());
            for col in m.columns() {
                let dot: BigInt = col
                    .iter()
                    .zip(&s[..s.len() - 1])
                    .map(|(b, &ai)| b * BigInt::from(ai))
                    .fold(BigInt::zero(), |acc, t| acc + t);
                assert!(dot.mod_floor(&BigInt::from(ad)).is_zero());
            }
            // HNF shape: zero above diagonal, positive diagonal, reduced row.
            let n = m.n();
            for j in 0..n {
                for i in 0..j {
                    assert!(m.entry(i, j).is_zero());
                }
                assert!(m.entry(j, j).is_positive());
                for i in j + 1..n {
                    // entries left of the diagonal in row i live in [0, diag)
                    let diag = m.entry(i, i);
                    assert!(!m.entry(i, j).is_negative() && m.entry(i, j) < diag);
                }
            }
        }
    }

    #[test]
    fn hnf_is_idempotent_and_basis_invariant() {
        let m = congruence_lattice(&pt(&[6, 9, 20])).unwrap();
        let again = m.hnf_lower().unwrap();
        assert_eq!(m, again);
        // A column-operated variant of the basis has the same HNF.
        let c0 = m.columns()[0].clone();
        let mut c1 = m.columns()[1].clone();
        for i in 0..c1.len() {
            c1[i] = &c1[i] + int(3) * &c0[i];
        }
        let variant = IntMatrix::from_columns(vec![c1, c0]).unwrap();
        assert_eq!(variant.hnf_lower().unwrap(), m);
    }

    #[test]
    fn normalized_basis_is_unimodular_and_exact() {
        let b = frobenius_lattice(&pt(&[2, 3, 5])).unwrap();
        assert_eq!(b.dim(), 2);
        let det = b.det_exact().unwrap();
        assert!(det.abs().is_one());
        assert!((b.det_f64().abs() - 1.0).abs() < tol::UNIMODULAR_DET);
        // Columns: diag(2,3) * [[1,0],[1,5]] = (2,3) and (0,15), scale 30^(-1/2).
        assert_eq!(b.rational_columns()[0], vec![
            BigRational::from(int(2)),
            BigRational::from(int(3))
        ]);
        assert_eq!(b.rational_columns()[1], vec![
            BigRational::from(int(0)),
            BigRational::from(int(15))
        ]);
        let s = b.scale().value();
        assert!((s - 1.0 / 30f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn both_constructions_agree_exactly() {
        for coords in [
            [2u64, 3, 5],
            [6, 9, 20],
            [4, 6, 9],
            [11, 13, 17],
        ] {
            let p = pt(&coords);
            let direct = frobenius_lattice(&p).unwrap();
            let sliced = frobenius_lattice_intersection(&p).unwrap();
            assert!(lattice_equal(&direct, &sliced, tol::LATTICE_EQ).unwrap());
            assert!(sliced.det_exact().unwrap().abs().is_one());
        }
        // Dimension 4 input gives rank-3 lattices.
        let p = pt(&[3, 5, 7, 11]);
        let direct = frobenius_lattice(&p).unwrap();
        let sliced = frobenius_lattice_intersection(&p).unwrap();
        assert_eq!(direct.dim(), 3);
        assert!(lattice_equal(&direct, &sliced, tol::LATTICE_EQ).unwrap());
    }

    #[test]
    fn lattice_equal_detects_inequality() {
        let z2 = RealLatticeBasis::standard(2).unwrap();
        let b = frobenius_lattice(&pt(&[2, 3, 5])).unwrap();
        // Same scale (exact path): index-5 sublattice is not equal.
        let sub = RealLatticeBasis::from_parts(
            vec![
                vec![BigRational::from(int(1)), BigRational::zero()],
                vec![BigRational::zero(), BigRational::from(int(5))],
            ],
            Scale::one(),
        )
        .unwrap();
        assert!(!lattice_equal(&z2, &sub, tol::LATTICE_EQ).unwrap());
        // Different scales (float path): unit lattice vs normalized one.
        assert!(!lattice_equal(&z2, &b, tol::LATTICE_EQ).unwrap());
        // A permuted/negated basis of Z^2 is still Z^2.
        let flip = RealLatticeBasis::from_parts(
            vec![
                vec![BigRational::zero(), BigRational::from(int(-1))],
                vec![BigRational::from(int(1)), BigRational::zero()],
            ],
            Scale::one(),
        )
        .unwrap();
        assert!(lattice_equal(&z2, &flip, tol::LATTICE_EQ).unwrap());
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let b = frobenius_lattice(&pt(&[6, 9, 20])).unwrap();
        let dd = b.dual().unwrap().dual().unwrap();
        assert!(lattice_equal(&b, &dd, tol::LATTICE_EQ).unwrap());
        // det(dual) = 1/det.
        let d = b.dual().unwrap().det_exact().unwrap();
        assert!(d.abs().is_one());
        // Z^2 is self-dual.
        let z2 = RealLatticeBasis::standard(2).unwrap();
        assert!(lattice_equal(&z2, &z2.dual().unwrap(), tol::LATTICE_EQ).unwrap());
    }

    #[test]
    fn group_elements_have_det_one() {
        let d = dilation(3, 7.0).unwrap();
        assert!((d.mat[0][0] - 7f64.powf(-0.5)).abs() < 1e-15);
        assert!((d.mat[2][2] - 7.0).abs() < 1e-15);
        assert!((d.det() - 1.0).abs() < tol::GROUP_DET);
        let m = normalized_diag_block(&[0.4, 0.6]).unwrap();
        assert!((m.det() - 1.0).abs() < tol::GROUP_DET);
        let n = shear(&[0.3, -1.2]).unwrap();
        assert!((n.det() - 1.0).abs() < tol::GROUP_DET);
        assert!(normalized_diag(&[0.4, 0.0]).is_err());
        assert!(normalized_diag(&[0.4, -0.1]).is_err());
        assert!(dilation(3, 0.0).is_err());
    }

    #[test]
    fn shears_compose_additively() {
        let a = shear(&[0.25, -0.5]).unwrap();
        let b = shear(&[1.0, 2.0]).unwrap();
        let ab = a.mul(&b).unwrap();
        let direct = shear(&[1.25, 1.5]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((ab.mat[i][j] - direct.mat[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lagrange_reduction_tracks_coefficients() {
        let cols = [
            vec![BigRational::from(int(2)), BigRational::from(int(3))],
            vec![BigRational::from(int(0)), BigRational::from(int(15))],
        ];
        let (red, v) = lagrange_reduce(&cols);
        // Reduced vectors still generate: |det V| = 1.
        let det = &v[0][0] * &v[1][1] - &v[0][1] * &v[1][0];
        assert!(det.magnitude().is_one());
        // Reduced = original * V.
        for j in 0..2 {
            for i in 0..2 {
                let want = &cols[0][i] * BigRational::from(v[j][0].clone())
                    + &cols[1][i] * BigRational::from(v[j][1].clone());
                assert_eq!(red[j][i], want);
            }
        }
        // First vector is no longer than the second.
        let n = |c: &Vec<BigRational>| &c[0] * &c[0] + &c[1] * &c[1];
        assert!(n(&red[0]) <= n(&red[1]));
    }

    #[test]
    fn unimodular_clear_zeroes_prefix() {
        let v = vec![int(6), int(10), int(15)];
        let (u, g) = unimodular_clear(&v);
        assert_eq!(g, int(1));
        for (j, col) in u.iter().enumerate() {
            let dot: BigInt = col.iter().zip(&v).map(|(c, w)| c * w).sum();
            if j < 2 {
                assert!(dot.is_zero());
            } else {
                assert_eq!(dot, int(1));
            }
        }
        let um = IntMatrix::from_columns(u).unwrap();
        assert!(um.det().magnitude().is_one());
    }
}
