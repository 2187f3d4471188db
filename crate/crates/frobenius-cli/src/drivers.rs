//! Parallel execution of per-point work. Exhaustive sweeps split on the
//! enumeration seam (the first coordinate), sampling splits on index
//! ranges; both reduce in a fixed order, so the thread count can never
//! change output bytes.

use frobenius_core::domains::{Domain, PrimitivePoint};
use frobenius_core::ensemble::{record_for, EnsembleRecord, Mode};
use frobenius_core::{Error, Result};
use rayon::prelude::*;

/// Sample indices are generated in ranges of this size per task.
const SAMPLE_CHUNK: u64 = 1024;

pub fn make_pool(threads: usize) -> std::result::Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| format!("thread pool: {e}"))
}

/// Applies `f` to every primitive point of `t * domain` in enumeration
/// order, fanning the first-coordinate slices across the pool.
pub fn map_domain_points<T, F>(
    pool: &rayon::ThreadPool,
    domain: &Domain,
    t: f64,
    min_coord: u64,
    enum_budget: u64,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(PrimitivePoint) -> Result<T> + Sync,
{
    let required = domain.candidate_count(t);
    if required > enum_budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: enum_budget as u128,
        });
    }
    let hi = domain.coord_upper(t);
    let slices: Vec<Vec<T>> = pool.install(|| {
        (1..=hi)
            .into_par_iter()
            .map(|first| {
                domain
                    .enumerate_primitive_with_first(t, min_coord, first)?
                    .into_iter()
                    .map(&f)
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<Vec<T>>>>()
    })?;
    Ok(slices.into_iter().flatten().collect())
}

/// Applies `f` to `n` sampled points in index order. Each sample index has
/// its own generator stream, so chunking is free to change without moving
/// any sample.
pub fn map_sampled_points<T, F>(
    pool: &rayon::ThreadPool,
    domain: &Domain,
    t: f64,
    seed: u64,
    min_coord: u64,
    n: u64,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(PrimitivePoint) -> Result<T> + Sync,
{
    let chunks: Vec<(u64, u64)> = (0..n)
        .step_by(SAMPLE_CHUNK as usize)
        .map(|lo| (lo, (lo + SAMPLE_CHUNK).min(n)))
        .collect();
    let parts: Vec<Vec<T>> = pool.install(|| {
        chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                domain
                    .sample_primitive_indices(t, seed, min_coord, lo..hi)?
                    .into_iter()
                    .map(&f)
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<Vec<T>>>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Parallel counterpart of the core ensemble builder; same records in the
/// same order.
pub fn build_records(
    pool: &rayon::ThreadPool,
    domain: &Domain,
    t: f64,
    mode: Mode,
    min_coord: u64,
    enum_budget: u64,
) -> Result<Vec<EnsembleRecord>> {
    match mode {
        Mode::Exhaustive => map_domain_points(pool, domain, t, min_coord, enum_budget, record_for),
        Mode::Sample { n, seed } => {
            map_sampled_points(pool, domain, t, seed, min_coord, n, record_for)
        }
    }
}

/// Normalized statistics only, for sweeps too large to hold full records.
pub fn build_q_stats(
    pool: &rayon::ThreadPool,
    domain: &Domain,
    t: f64,
    min_coord: u64,
    enum_budget: u64,
) -> Result<Vec<f64>> {
    map_domain_points(pool, domain, t, min_coord, enum_budget, |p| {
        record_for(p).map(|r| r.q_stat)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius_core::ensemble::build_ensemble;

    #[test]
    fn parallel_enumeration_matches_serial_order() {
        let domain = Domain::unit_cube(3).unwrap();
        let pool1 = make_pool(1).unwrap();
        let pool8 = make_pool(8).unwrap();
        let serial = domain.enumerate_primitive(6.0, 1, 1 << 20).unwrap();
        let par1 = map_domain_points(&pool1, &domain, 6.0, 1, 1 << 20, Ok).unwrap();
        let par8 = map_domain_points(&pool8, &domain, 6.0, 1, 1 << 20, Ok).unwrap();
        assert_eq!(serial, par1);
        assert_eq!(serial, par8);
    }

    #[test]
    fn parallel_records_match_the_core_builder() {
        let domain = Domain::unit_cube(3).unwrap();
        let pool = make_pool(4).unwrap();
        let serial = build_ensemble(&domain, 5.0, Mode::Exhaustive, 1, 1 << 20).unwrap();
        let par = build_records(&pool, &domain, 5.0, Mode::Exhaustive, 1, 1 << 20).unwrap();
        assert_eq!(serial.len(), par.len());
        for (s, p) in serial.iter().zip(&par) {
            assert_eq!(s.a.coords(), p.a.coords());
            assert_eq!(s.f_value, p.f_value);
            assert_eq!(s.q_stat.to_bits(), p.q_stat.to_bits());
        }
    }

    #[test]
    fn sampled_mapping_is_chunking_invariant() {
        let domain = Domain::unit_cube(3).unwrap();
        let pool = make_pool(8).unwrap();
        let n = 2500u64; // straddles chunk boundaries
        let serial = domain.sample_primitive_indices(9.0, 7, 1, 0..n).unwrap();
        let par = map_sampled_points(&pool, &domain, 9.0, 7, 1, n, Ok).unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn budget_refusal_matches_core_semantics() {
        let domain = Domain::unit_cube(3).unwrap();
        let pool = make_pool(2).unwrap();
        let err = map_domain_points(&pool, &domain, 100.0, 1, 10, Ok).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
