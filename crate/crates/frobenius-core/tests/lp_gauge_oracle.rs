//! Cross-checks the closed-form gauge evaluations against an independent
//! exact-rational LP oracle. Membership gauges are computed as
//! min { t : x in t K } over the vertex description of K, polar gauges as
//! the support function of the primal body; both are linear programs the
//! closed forms never see.

use frobenius_core::convexgeom::Gauge;
use frobenius_core::tol;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type R = BigRational;

fn rat(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

/// Dense-tableau simplex with Bland's rule, exact arithmetic.
/// Minimizes cost over { z >= 0 : A z = b }. Returns None when infeasible.
struct Tableau {
    rows: Vec<Vec<R>>, // m x (ncols + 1), last column is rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            let t = &*v / &p;
            *v = t;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let t = &self.rows[i][j] - &f * &self.rows[r][j];
                self.rows[i][j] = t;
            }
        }
        self.basis[r] = c;
    }

    /// Bland anti-cycling: entering = smallest column with negative reduced
    /// cost, leaving = min ratio then smallest basis index. Only columns
    /// below `limit` may enter (phase 2 locks the artificials out).
    fn optimize(&mut self, cost: &[R], limit: usize) -> R {
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() {
                        red -= &cost[bi] * &self.rows[i][j];
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { break };
            let mut leave: Option<(usize, R)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (r, _) = leave.expect("our LPs are bounded");
            self.pivot(r, c);
        }
        let mut obj = R::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            obj += &cost[bi] * &self.rows[i][self.ncols];
        }
        obj
    }
}

/// min c.z subject to A z = b, z >= 0 (two-phase). None when infeasible.
fn solve_min(a: &[Vec<R>], b: &[R], c: &[R]) -> Option<R> {
    let m = a.len();
    let n = c.len();
    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<R> = Vec::with_capacity(total + 1);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for j in 0..m {
            row.push(if i == j { R::one() } else { R::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let basis: Vec<usize> = (n..total).collect();
    let mut t = Tableau {
        rows,
        basis,
        ncols: total,
    };
    let mut phase1 = vec![R::zero(); total];
    for p in phase1.iter_mut().skip(n) {
        *p = R::one();
    }
    if !t.optimize(&phase1, total).is_zero() {
        return None;
    }
    // Drive leftover artificials out of the basis. Any that remain sit in
    // rows that are all-zero over the original columns (redundant
    // constraints), so no later pivot can move them off zero.
    for i in 0..t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            }
        }
    }
    // Artificial columns may not re-enter; zero cost keeps basic-at-zero
    // artificials out of the objective.
    let mut phase2: Vec<R> = c.to_vec();
    phase2.resize(total, R::zero());
    Some(t.optimize(&phase2, n))
}

/// Nonzero vertices of the standard simplex conv{0, e_1..e_n}.
fn simplex_vertices(n: usize) -> Vec<Vec<R>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if k == i { R::one() } else { R::zero() })
                .collect()
        })
        .collect()
}

/// Nonzero vertices of the difference body: e_i, -e_j, e_i - e_j.
fn diff_vertices(n: usize) -> Vec<Vec<R>> {
    let mut out = simplex_vertices(n);
    for v in simplex_vertices(n) {
        out.push(v.iter().map(|x| -x).collect());
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(
                    (0..n)
                        .map(|k| {
                            if k == i {
                                R::one()
                            } else if k == j {
                                -R::one()
                            } else {
                                R::zero()
                            }
                        })
                        .collect(),
                );
            }
        }
    }
    out
}

/// min { t : x = V lambda, sum lambda <= t, lambda >= 0 }, i.e. the gauge of
/// conv(V u {0}) at x. None when x lies outside every dilate.
fn membership_gauge(vertices: &[Vec<R>], x: &[R]) -> Option<R> {
    let n = x.len();
    let k = vertices.len();
    // variables: lambda_1..k, t, slack  (sum lambda - t + s = 0)
    let nv = k + 2;
    let mut a = vec![vec![R::zero(); nv]; n + 1];
    for (col, v) in vertices.iter().enumerate() {
        for row in 0..n {
            a[row][col] = v[row].clone();
        }
        a[n][col] = R::one();
    }
    a[n][k] = -R::one();
    a[n][k + 1] = R::one();
    let mut b: Vec<R> = x.to_vec();
    b.push(R::zero());
    let mut c = vec![R::zero(); nv];
    c[k] = R::one();
    solve_min(&a, &b, &c)
}

/// Support function max { <y, v> : v in conv(V u {0}) } as an LP.
fn support_gauge(vertices: &[Vec<R>], y: &[R]) -> R {
    let k = vertices.len();
    // variables: lambda_1..k, slack; sum lambda + s = 1; maximize <y,V>lambda
    let nv = k + 1;
    let mut a = vec![vec![R::zero(); nv]; 1];
    for col in 0..k {
        a[0][col] = R::one();
    }
    a[0][k] = R::one();
    let b = vec![R::one()];
    let mut c = vec![R::zero(); nv];
    for (col, v) in vertices.iter().enumerate() {
        let dot = y.iter().zip(v).fold(R::zero(), |s, (yi, vi)| s + yi * vi);
        c[col] = -dot; // minimize the negation
    }
    -solve_min(&a, &b, &c).expect("support LP is always feasible")
}

fn to_f64(r: &R) -> f64 {
    // denominators are powers of two in this test, so this is exact
    let n = r.numer().to_string().parse::<f64>().unwrap();
    let d = r.denom().to_string().parse::<f64>().unwrap();
    n / d
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> (Vec<R>, Vec<f64>) {
    // eighth-integer coordinates: exact in f64, exercises non-integers
    let mut xr = Vec::with_capacity(n);
    let mut xf = Vec::with_capacity(n);
    for _ in 0..n {
        let k: i64 = rng.gen_range(-40..=40);
        xr.push(rat(k, 8));
        xf.push(k as f64 / 8.0);
    }
    (xr, xf)
}

fn random_nonneg_point(rng: &mut ChaCha8Rng, n: usize) -> (Vec<R>, Vec<f64>) {
    let mut xr = Vec::with_capacity(n);
    let mut xf = Vec::with_capacity(n);
    for _ in 0..n {
        let k: i64 = rng.gen_range(0..=40);
        xr.push(rat(k, 8));
        xf.push(k as f64 / 8.0);
    }
    (xr, xf)
}

#[test]
fn simplex_gauge_matches_lp_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in [2usize, 3] {
        let gauge = Gauge::simplex(n).unwrap();
        let verts = simplex_vertices(n);
        for trial in 0..5000 {
            // half the trials inside the cone so the finite branch is hit
            let (xr, xf) = if trial % 2 == 0 {
                random_nonneg_point(&mut rng, n)
            } else {
                random_point(&mut rng, n)
            };
            let ours = gauge.eval(&xf).unwrap();
            match membership_gauge(&verts, &xr) {
                Some(lp) => {
                    assert!(
                        (ours - to_f64(&lp)).abs() <= tol::GAUGE_ORACLE,
                        "simplex gauge mismatch at {:?}: {} vs {}",
                        xf,
                        ours,
                        to_f64(&lp)
                    );
                }
                None => assert!(
                    ours.is_infinite(),
                    "LP infeasible but closed form finite at {:?}",
                    xf
                ),
            }
        }
    }
}

#[test]
fn diff_gauge_matches_lp_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for n in [2usize, 3] {
        let gauge = Gauge::diff_simplex(n).unwrap();
        let verts = diff_vertices(n);
        for _ in 0..5000 {
            let (xr, xf) = random_point(&mut rng, n);
            let ours = gauge.eval(&xf).unwrap();
            let lp = membership_gauge(&verts, &xr).expect("difference body is absorbing");
            assert!(
                (ours - to_f64(&lp)).abs() <= tol::GAUGE_ORACLE,
                "diff gauge mismatch at {:?}: {} vs {}",
                xf,
                ours,
                to_f64(&lp)
            );
        }
    }
}

#[test]
fn polar_diff_gauge_matches_support_lp() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in [2usize, 3] {
        let gauge = Gauge::polar_diff_simplex(n).unwrap();
        let verts = diff_vertices(n);
        for _ in 0..5000 {
            let (yr, yf) = random_point(&mut rng, n);
            let ours = gauge.eval(&yf).unwrap();
            let lp = support_gauge(&verts, &yr);
            assert!(
                (ours - to_f64(&lp)).abs() <= tol::GAUGE_ORACLE,
                "polar gauge mismatch at {:?}: {} vs {}",
                yf,
                ours,
                to_f64(&lp)
            );
        }
    }
}

#[test]
fn lp_oracle_self_checks() {
    // known values keep the oracle itself honest
    let verts = diff_vertices(2);
    let g = membership_gauge(&verts, &[rat(1, 1), rat(1, 1)]).unwrap();
    assert_eq!(g, rat(2, 1)); // (1,1) = e1 + e2 needs two simplex units
    let g = membership_gauge(&verts, &[rat(1, 1), rat(-1, 1)]).unwrap();
    assert_eq!(g, rat(1, 1)); // e1 - e2 is a vertex
    let s = support_gauge(&verts, &[rat(3, 1), rat(-1, 1)]);
    assert_eq!(s, rat(4, 1)); // attained at e1 - e2
    let s = support_gauge(&verts, &[rat(-2, 1), rat(-3, 1)]);
    assert_eq!(s, rat(3, 1)); // attained at -e2
    assert!(membership_gauge(&simplex_vertices(2), &[rat(-1, 1), rat(0, 1)]).is_none());
}
