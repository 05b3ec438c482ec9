//! Parallel drivers over primes. Each one maps the per-prime step of a core
//! operation across the current rayon pool and then runs the core combine
//! step on the results in prime order, so output never depends on the
//! number of threads. When several primes fail, the smallest one is
//! reported.

use frobscan_core::bounds::BoundsError;
use frobscan_core::constructions::{
    assemble_cq_report, assemble_nonex_report, assemble_pair_report, cq_count, cq_primes,
    crt_combine, pair_prime, search_genus2_anomalous, ConstructionError, CqReport, NonExReport,
    NonExSurface, PairReport,
};
use frobscan_core::counting::{
    count_hyperelliptic, count_points, hyperelliptic_good_reduction, CountMethod,
};
use frobscan_core::density::{DensityScan, Outcome, ScanError};
use frobscan_core::family::{
    assemble_sieve_report, combine_exceptional, compute_dp, family_primes, sieve_plan, DpRecord,
    ExceptionalCount, FamilyError, FamilySpec, SieveReport,
};
use frobscan_core::primes::PrimeIter;
use frobscan_core::{CountConfig, CountError, DensityReport, PointCountRecord, UniPoly, Variety};
use rayon::prelude::*;
use serde::Serialize;

/// Primes classified concurrently before their outcomes are folded.
const BLOCK: usize = 2048;

/// `f` on every item, in order; the first error by position wins.
pub fn map_ordered<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>, frobscan_core::primes::PrimeError> {
    if lo > hi || hi < 2 {
        return Ok(Vec::new());
    }
    Ok(PrimeIter::new(lo, hi)?.collect())
}

pub fn count_many(
    v: &Variety,
    primes: &[u64],
    method: CountMethod,
    cfg: &CountConfig,
) -> Result<Vec<PointCountRecord>, CountError> {
    map_ordered(primes, |&p| count_points(v, p, method, cfg))
}

/// Parallel counterpart of `density::extend_scan`.
pub fn extend_scan<F>(
    mut scan: DensityScan,
    x: u64,
    classify: F,
) -> Result<DensityReport, ScanError>
where
    F: Fn(u64) -> Result<Outcome, CountError> + Sync,
{
    let primes = primes_in(scan.covered() + 1, x)?;
    for block in primes.chunks(BLOCK) {
        let outcomes: Vec<_> = block.par_iter().map(|&p| classify(p)).collect();
        for (&p, o) in block.iter().zip(outcomes) {
            match o {
                Ok(o) => scan.push(p, o),
                Err(source) => {
                    return Err(ScanError::Truncated {
                        p,
                        source,
                        partial: Box::new(scan.finish(p - 1)),
                    })
                }
            }
        }
    }
    Ok(scan.finish(x))
}

/// Least `p <= bound` classified as a hit; blocks are searched in order.
pub fn least_hit<F>(bound: u64, predicate: &str, classify: F) -> Result<Option<u64>, ScanError>
where
    F: Fn(u64) -> Result<Outcome, CountError> + Sync,
{
    let primes = primes_in(2, bound)?;
    for block in primes.chunks(BLOCK) {
        let outcomes: Vec<_> = block.par_iter().map(|&p| classify(p)).collect();
        for (&p, o) in block.iter().zip(outcomes) {
            match o {
                Ok(Outcome::Hit) => return Ok(Some(p)),
                Ok(_) => {}
                Err(source) => {
                    return Err(ScanError::Truncated {
                        p,
                        source,
                        partial: Box::new(DensityReport::new(predicate)),
                    })
                }
            }
        }
    }
    Ok(None)
}

pub fn verify_cq(q: u64, cfg: &CountConfig) -> Result<CqReport, ConstructionError> {
    let (primes, p0) = cq_primes(q)?;
    let counts = map_ordered(&primes, |&p| cq_count(q, p, cfg))?;
    let n0 = cq_count(q, p0, cfg)?;
    Ok(assemble_cq_report(q, p0, n0, &primes, &counts))
}

pub fn verify_genus2_pair(
    curves: &[UniPoly; 2],
    bound: u64,
    p_max: u64,
    cfg: &CountConfig,
) -> Result<PairReport, ConstructionError> {
    let primes = primes_in(3, p_max.max(bound.saturating_sub(1)))?;
    let records = map_ordered(&primes, |&p| pair_prime(curves, p, cfg))?;
    Ok(assemble_pair_report(curves, bound, p_max, records))
}

pub fn check_nonex(
    s: &NonExSurface,
    p_max: u64,
    cfg: &CountConfig,
) -> Result<NonExReport, ConstructionError> {
    let primes = primes_in(3, p_max)?;
    let counts = map_ordered(&primes, |&p| s.count(p, cfg).map(|n| (p, n)))?;
    Ok(assemble_nonex_report(p_max, counts))
}

pub fn dp_records(
    spec: &FamilySpec,
    primes: &[u64],
    cfg: &CountConfig,
) -> Result<Vec<DpRecord>, FamilyError> {
    map_ordered(primes, |&p| compute_dp(spec, p, cfg))
}

/// `S(T, Q)` over the good primes below `q`.
pub fn exceptional_count(
    spec: &FamilySpec,
    t: u64,
    q: u64,
    cfg: &CountConfig,
) -> Result<ExceptionalCount, FamilyError> {
    let primes = family_primes(spec, q.saturating_sub(1))?;
    Ok(combine_exceptional(t, &dp_records(spec, &primes, cfg)?))
}

pub fn sieve_experiment(
    spec: &FamilySpec,
    t: u64,
    k: f64,
    q_cap: u64,
    cfg: &CountConfig,
) -> Result<SieveReport, FamilyError> {
    let (params, q, q_used) = sieve_plan(spec, t, k, q_cap)?;
    let primes = family_primes(spec, q_used)?;
    let records = dp_records(spec, &primes, cfg)?;
    assemble_sieve_report(spec, t, &params, q, q_used, &records)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalQuintic {
    pub p: u64,
    pub f_p: String,
}

/// A genus-2 curve anomalous at every odd prime below a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Genus2Construction {
    pub primes_below: u64,
    pub seed: u64,
    pub local: Vec<LocalQuintic>,
    pub f: String,
    /// Recounts of the lifted curve; `N(p) = p` at every listed prime.
    pub counts: Vec<(u64, u64)>,
    /// Listed primes where the lift is singular; empty by construction.
    pub bad_reduction: Vec<u64>,
    pub holds: bool,
}

/// Finds `f_p` at each odd prime below `n`, lifts by CRT, and recounts the
/// lift at every one of those primes.
pub fn construct_genus2(
    n: u64,
    seed: u64,
    cap: u64,
    cfg: &CountConfig,
) -> Result<Genus2Construction, ConstructionError> {
    let primes = primes_in(3, n.saturating_sub(1))?;
    let locals = map_ordered(&primes, |&p| {
        search_genus2_anomalous(p, seed, cap).map(|f| (p, f))
    })?;
    let f = crt_combine(&locals)?;
    let counts = map_ordered(&primes, |&p| {
        count_hyperelliptic(&f, p, cfg).map(|r| (p, r.n_affine))
    })?;
    let bad_reduction: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| !hyperelliptic_good_reduction(&f, p))
        .collect();
    Ok(Genus2Construction {
        primes_below: n,
        seed,
        local: locals
            .iter()
            .map(|(p, f)| LocalQuintic {
                p: *p,
                f_p: f.to_string(),
            })
            .collect(),
        f: f.to_string(),
        holds: bad_reduction.is_empty() && counts.iter().all(|(p, c)| p == c),
        counts,
        bad_reduction,
    })
}

/// `count_p_symplectic` for every `p` in `1..ell`, in order.
pub fn p_symplectic_all(
    ell: u64,
    g: u32,
    excluded: &[i64],
    cap: u64,
) -> Result<Vec<(u64, u64)>, BoundsError> {
    let ps: Vec<u64> = (1..ell).collect();
    map_ordered(&ps, |&p| {
        frobscan_core::bounds::count_p_symplectic(ell, g, p, excluded, cap).map(|c| (p, c))
    })
}
