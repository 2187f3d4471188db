//! The largest integer not representable as a nonnegative integer
//! combination of the coordinates of a primitive vector, plus the classical
//! upper bounds and the normalized statistic built from it.
//!
//! Two-coordinate inputs use the closed form a1*a2 - a1 - a2. Everything
//! else goes through the residue graph mod m = min(a): node r holds the
//! smallest representable integer congruent to r, found by Dijkstra, and the
//! answer is max_r dist(r) - m. A coordinate equal to 1 collapses the graph
//! to a single node and yields the sentinel -1 (every positive integer is
//! representable).
//!
//! Arithmetic is fixed-width but checked by construction: coordinates are
//! capped at 2^62, so products of two fit in i128 and graph distances
//! (below min(a) * max(a)) fit in u128 with room to spare.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;

use crate::domains::PrimitivePoint;
use crate::error::{Error, Result};
use crate::numeric::{big_ratio_f64, is_sorted_nondecreasing, root_with_guard};

/// Coordinates above this would let a1*a2 or graph distances approach the
/// i128/u128 edge; refuse instead of risking silent wrap.
pub const MAX_COORD: u64 = 1 << 62;

/// Residue graphs need a dist table of min(a) entries; refuse sizes that
/// would obviously thrash or OOM rather than crawl forever.
pub const MAX_GRAPH_NODES: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Closed form for two generators.
    Sylvester,
    /// Shortest representable integer per residue class mod min(a).
    ResidueGraph,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusResult {
    /// Largest non-representable integer; -1 when every positive integer is
    /// representable (some coordinate is 1).
    pub value: i128,
    /// apery[r] = least representable integer congruent to r mod min(a).
    /// Present iff the residue graph ran.
    pub apery: Option<Vec<u128>>,
    pub algorithm: Algorithm,
}

/// Frobenius number of a primitive vector. Coordinates of any order and
/// multiplicity are accepted; the value is invariant under both.
pub fn frobenius_number(a: &PrimitivePoint) -> Result<FrobeniusResult> {
    if a.max() > MAX_COORD {
        return Err(Error::CoordinateTooLarge { limit: MAX_COORD });
    }
    if a.dim() == 2 {
        let s = a.sorted_coords();
        let (a1, a2) = (s[0] as i128, s[1] as i128);
        return Ok(FrobeniusResult {
            value: a1 * a2 - a1 - a2,
            apery: None,
            algorithm: Algorithm::Sylvester,
        });
    }
    let apery = apery_set(a)?;
    let m = a.min() as i128;
    let value = *apery.iter().max().expect("nonempty") as i128 - m;
    Ok(FrobeniusResult {
        value,
        apery: Some(apery),
        algorithm: Algorithm::ResidueGraph,
    })
}

/// Least representable integer in each residue class mod min(a), by
/// Dijkstra over residues with the generators as edge weights.
pub fn apery_set(a: &PrimitivePoint) -> Result<Vec<u128>> {
    if a.max() > MAX_COORD {
        return Err(Error::CoordinateTooLarge { limit: MAX_COORD });
    }
    let m64 = a.min();
    if m64 > MAX_GRAPH_NODES {
        return Err(Error::BudgetExceeded {
            required: m64 as u128,
            budget: MAX_GRAPH_NODES as u128,
        });
    }
    let m = m64 as usize;
    // Deduplicated generators with nonzero residue; a generator that is a
    // multiple of m only relaxes a node to itself.
    let mut gens: Vec<u64> = a
        .coords()
        .iter()
        .copied()
        .filter(|&g| g % m64 != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();

    let mut dist: Vec<u128> = vec![u128::MAX; m];
    dist[0] = 0;
    let mut heap: BinaryHeap<Reverse<(u128, usize)>> = BinaryHeap::new();
    heap.push(Reverse((0, 0)));
    while let Some(Reverse((dv, r))) = heap.pop() {
        if dv > dist[r] {
            continue;
        }
        for &g in &gens {
            let nr = (r + (g % m64) as usize) % m;
            let nd = dv + g as u128;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    // gcd(a) = 1 makes every residue reachable.
    debug_assert!(dist.iter().all(|&d| d != u128::MAX));
    Ok(dist)
}

/// Erdos-Graham, Selmer, and Vitek upper bounds for F(a), reported verbatim
/// (they can be vacuous, i.e. negative, for small leading coordinates).
/// Takes a raw sorted slice because the bounds are order-sensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalBounds {
    /// 2 a_d floor(a_1/d) - a_1
    pub erdos_graham: i128,
    /// 2 a_{d-1} floor(a_d/d) - a_d
    pub selmer: i128,
    /// floor((a_d - 2)(a_2 - 1)/2) - 1; undefined for d = 2.
    pub vitek: Option<i128>,
}

pub fn classical_bounds(a: &[u64]) -> Result<ClassicalBounds> {
    if a.len() < 2 {
        return Err(Error::TooFewCoordinates { got: a.len() });
    }
    if !is_sorted_nondecreasing(a) {
        return Err(Error::NotSorted);
    }
    if a[0] < 2 {
        return Err(Error::CoordinateTooSmall { min: 2 });
    }
    if a[a.len() - 1] > MAX_COORD {
        return Err(Error::CoordinateTooLarge { limit: MAX_COORD });
    }
    let d = a.len() as i128;
    let a1 = a[0] as i128;
    let a2 = a[1] as i128;
    let ad = a[a.len() - 1] as i128;
    let adm1 = a[a.len() - 2] as i128;
    let erdos_graham = 2 * ad * (a1 / d) - a1;
    let selmer = 2 * adm1 * (ad / d) - ad;
    let vitek = if a.len() >= 3 {
        Some((ad - 2) * (a2 - 1) / 2 - 1)
    } else {
        None
    };
    Ok(ClassicalBounds {
        erdos_graham,
        selmer,
        vitek,
    })
}

/// (prod a_i)^(1/(d-1)) with ~30 correct decimal digits, rounded once to f64.
pub fn root_prod(a: &PrimitivePoint) -> f64 {
    let k = (a.dim() - 1) as u32;
    let (r, s) = root_with_guard(&a.product(), k);
    big_ratio_f64(&BigInt::from(r), &BigInt::from(s))
}

/// (F(a) + sum a_i) / (prod a_i)^(1/(d-1)), or without the sum term.
/// The division happens on exact integers carrying 30 guard digits, so the
/// only rounding is the final conversion to f64.
pub fn normalized_statistic(a: &PrimitivePoint, include_sum: bool) -> Result<f64> {
    let f = frobenius_number(a)?.value;
    Ok(normalized_statistic_with(a, f, include_sum))
}

/// Same, for callers that already computed F(a).
pub fn normalized_statistic_with(a: &PrimitivePoint, f_value: i128, include_sum: bool) -> f64 {
    let k = (a.dim() - 1) as u32;
    let (r, s) = root_with_guard(&a.product(), k);
    let mut num = BigInt::from(f_value);
    if include_sum {
        num += BigInt::from(a.sum());
    }
    big_ratio_f64(&(num * BigInt::from(s)), &BigInt::from(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(v: &[u64]) -> PrimitivePoint {
        PrimitivePoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(frobenius_number(&pt(&[6, 9, 20])).unwrap().value, 43);
        assert_eq!(frobenius_number(&pt(&[4, 6, 9])).unwrap().value, 11);
        assert_eq!(frobenius_number(&pt(&[2, 3, 5])).unwrap().value, 1);
        assert_eq!(frobenius_number(&pt(&[3, 4, 5])).unwrap().value, 2);
        let two = frobenius_number(&pt(&[3, 5])).unwrap();
        assert_eq!(two.value, 7);
        assert_eq!(two.algorithm, Algorithm::Sylvester);
        assert_eq!(two.apery, None);
    }

    #[test]
    fn unit_coordinate_gives_sentinel() {
        let r = frobenius_number(&pt(&[1, 7, 9])).unwrap();
        assert_eq!(r.value, -1);
        assert_eq!(r.apery, Some(vec![0]));
        assert_eq!(frobenius_number(&pt(&[1, 2])).unwrap().value, -1);
    }

    #[test]
    fn apery_set_mod_six() {
        let r = frobenius_number(&pt(&[6, 9, 20])).unwrap();
        assert_eq!(r.apery, Some(vec![0, 49, 20, 9, 40, 29]));
        assert_eq!(r.algorithm, Algorithm::ResidueGraph);
    }

    #[test]
    fn order_and_multiplicity_invariance() {
        let base = frobenius_number(&pt(&[6, 9, 20])).unwrap().value;
        assert_eq!(frobenius_number(&pt(&[20, 6, 9])).unwrap().value, base);
        assert_eq!(frobenius_number(&pt(&[9, 20, 6, 6])).unwrap().value, base);
        // A redundant generator (multiple of another) changes nothing.
        assert_eq!(frobenius_number(&pt(&[6, 9, 20, 40])).unwrap().value, base);
    }

    #[test]
    fn value_is_max_apery_minus_min() {
        for coords in [
            vec![5u64, 7, 11],
            vec![7, 9, 11, 13],
            vec![12, 17, 23],
            vec![31, 41, 59, 26],
        ] {
            let p = pt(&coords);
            let r = frobenius_number(&p).unwrap();
            let ap = r.apery.unwrap();
            assert_eq!(ap.len(), p.min() as usize);
            assert_eq!(ap[0], 0);
            let max = *ap.iter().max().unwrap() as i128;
            assert_eq!(r.value, max - p.min() as i128);
            // Each apery entry really is congruent to its index.
            for (r_idx, &v) in ap.iter().enumerate() {
                assert_eq!(v % p.min() as u128, r_idx as u128);
            }
        }
    }

    #[test]
    fn classical_bounds_examples() {
        let b = classical_bounds(&[6, 9, 20]).unwrap();
        assert_eq!(b.erdos_graham, 74);
        assert_eq!(b.selmer, 88);
        assert_eq!(b.vitek, Some(71));
        // Vacuous bound reported verbatim.
        let v = classical_bounds(&[2, 3, 5]).unwrap();
        assert_eq!(v.erdos_graham, -2);
        // d = 2: Erdos-Graham only pair behavior, no Vitek.
        let two = classical_bounds(&[3, 5]).unwrap();
        assert_eq!(two.erdos_graham, 2 * 5 * (3 / 2) - 3);
        assert_eq!(two.vitek, None);
        assert_eq!(classical_bounds(&[9, 6, 20]).unwrap_err(), Error::NotSorted);
        assert_eq!(
            classical_bounds(&[1, 6, 20]).unwrap_err(),
            Error::CoordinateTooSmall { min: 2 }
        );
    }

    #[test]
    fn normalized_statistic_examples() {
        let p = pt(&[2, 3, 5]);
        let q = normalized_statistic(&p, true).unwrap();
        assert!((q - 11.0 / 30f64.sqrt()).abs() < 1e-12);
        let q0 = normalized_statistic(&p, false).unwrap();
        assert!((q0 - 1.0 / 30f64.sqrt()).abs() < 1e-12);
        assert!(q > q0);
        assert!((root_prod(&p) - 30f64.sqrt()).abs() < 1e-12);
        // d = 2 identity: the statistic with sum is exactly 1.
        for pair in [[3u64, 5], [7, 11], [4, 9]] {
            let q = normalized_statistic(&pt(&pair), true).unwrap();
            assert!((q - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_oversized_coordinates() {
        let p = pt(&[(1u64 << 62) + 1, 3]);
        assert!(matches!(
            frobenius_number(&p),
            Err(Error::CoordinateTooLarge { .. })
        ));
    }
}
