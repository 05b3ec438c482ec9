//! Empirical densities of prime-indexed predicates on point counts.
//!
//! A scan walks the primes in increasing order, drops the bad ones, and
//! tallies how many good primes satisfy a predicate. Densities are relative
//! to the good primes seen so far. The work for one prime is a pure
//! classification ([`classify_congruence`], [`classify_nondivisibility`]);
//! [`DensityScan`] folds classifications in prime order, so a parallel
//! driver can classify blocks of primes concurrently and feed the results
//! back in order.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::counting::{count_points, CountConfig, CountError, CountMethod, Variety};
use crate::primes::{PrimeError, PrimeIter};

/// Running tallies and decade checkpoints of one scan.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityReport {
    pub predicate: String,
    pub x_max: u64,
    pub hits: u64,
    #[cfg_attr(feature = "serde", serde(rename = "scanned"))]
    pub good_primes_scanned: u64,
    pub bad_skipped: Vec<u64>,
    #[cfg_attr(feature = "serde", serde(rename = "density"))]
    pub running_density: f64,
    pub checkpoints: Vec<(u64, f64)>,
}

impl DensityReport {
    pub fn new(predicate: impl Into<String>) -> Self {
        DensityReport {
            predicate: predicate.into(),
            x_max: 1,
            hits: 0,
            good_primes_scanned: 0,
            bad_skipped: Vec::new(),
            running_density: 0.0,
            checkpoints: Vec::new(),
        }
    }

    fn density(&self) -> f64 {
        if self.good_primes_scanned == 0 {
            0.0
        } else {
            self.hits as f64 / self.good_primes_scanned as f64
        }
    }
}

/// How one prime enters a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Bad,
    Hit,
    Miss,
}

fn is_decade(x: u64) -> bool {
    let mut d = 100;
    while d < x {
        d = d.saturating_mul(10);
    }
    d == x
}

/// Folds per-prime outcomes, in increasing prime order, into a report.
#[derive(Debug, Clone)]
pub struct DensityScan {
    report: DensityReport,
    next_decade: u64,
    last_prime: u64,
}

impl DensityScan {
    pub fn new(predicate: impl Into<String>) -> Self {
        Self::resume(DensityReport::new(predicate))
    }

    /// Continues a finished report; its trailing end-of-scan checkpoint is
    /// dropped unless it sits on a decade.
    pub fn resume(mut report: DensityReport) -> Self {
        if let Some(&(x, _)) = report.checkpoints.last() {
            if x == report.x_max && !is_decade(x) {
                report.checkpoints.pop();
            }
        }
        let mut next_decade = 100;
        while next_decade <= report.x_max {
            next_decade = next_decade.saturating_mul(10);
        }
        let last_prime = report.x_max;
        DensityScan {
            report,
            next_decade,
            last_prime,
        }
    }

    /// Primes at or below this bound have already been folded in.
    pub fn covered(&self) -> u64 {
        self.last_prime
    }

    fn checkpoint_through(&mut self, x: u64) {
        while self.next_decade <= x {
            let d = self.report.density();
            self.report.checkpoints.push((self.next_decade, d));
            self.next_decade = self.next_decade.saturating_mul(10);
        }
    }

    pub fn push(&mut self, p: u64, outcome: Outcome) {
        debug_assert!(p > self.last_prime);
        self.checkpoint_through(p - 1);
        self.last_prime = p;
        match outcome {
            Outcome::Bad => self.report.bad_skipped.push(p),
            Outcome::Hit => {
                self.report.hits += 1;
                self.report.good_primes_scanned += 1;
            }
            Outcome::Miss => self.report.good_primes_scanned += 1,
        }
    }

    /// Closes the scan at `x`, which must not precede the last prime pushed.
    pub fn finish(mut self, x: u64) -> DensityReport {
        let x = x.max(self.report.x_max);
        self.checkpoint_through(x);
        self.report.x_max = x;
        self.report.running_density = self.report.density();
        if self.report.checkpoints.last().map(|c| c.0) != Some(x) {
            self.report
                .checkpoints
                .push((x, self.report.running_density));
        }
        self.report
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScanError {
    /// Counting failed at `p`; `partial` covers every prime below it.
    #[error("scan stopped at p = {p}: {source}")]
    Truncated {
        p: u64,
        source: CountError,
        partial: Box<DensityReport>,
    },
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
}

/// Runs `classify` on every prime in `(scan.covered(), x]`.
pub fn extend_scan<F>(
    mut scan: DensityScan,
    x: u64,
    mut classify: F,
) -> Result<DensityReport, ScanError>
where
    F: FnMut(u64) -> Result<Outcome, CountError>,
{
    let lo = scan.covered() + 1;
    if lo <= x {
        for p in PrimeIter::new(lo, x)? {
            match classify(p) {
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

/// `N(p) ≡ a (mod m)`, with primes dividing `m` treated as bad.
pub fn classify_congruence(
    v: &Variety,
    a: i64,
    m: u64,
    p: u64,
    cfg: &CountConfig,
) -> Result<Outcome, CountError> {
    if !v.is_good(p) || m.is_multiple_of(p) {
        return Ok(Outcome::Bad);
    }
    let rec = count_points(v, p, CountMethod::Auto, cfg)?;
    let r = (a as i128).rem_euclid(m as i128) as u64;
    Ok(if rec.n_affine % m == r {
        Outcome::Hit
    } else {
        Outcome::Miss
    })
}

/// `p ∤ N(p) - a_i` for every `a_i`.
pub fn classify_nondivisibility(
    v: &Variety,
    a_list: &[BigInt],
    p: u64,
    cfg: &CountConfig,
) -> Result<Outcome, CountError> {
    if !v.is_good(p) {
        return Ok(Outcome::Bad);
    }
    let rec = count_points(v, p, CountMethod::Auto, cfg)?;
    Ok(if a_list.iter().any(|a| rec.divides_shifted(a)) {
        Outcome::Miss
    } else {
        Outcome::Hit
    })
}

fn list(a_list: &[BigInt]) -> String {
    let items: Vec<String> = a_list.iter().map(|a| format!("{}", a)).collect();
    items.join(", ")
}

pub fn congruence_predicate(v: &Variety, a: i64, m: u64) -> String {
    format!(
        "N(p) = {} mod {} over good p not dividing {}; bad: {}",
        a,
        m,
        m,
        v.bad_primes().describe()
    )
}

pub fn nondivisibility_predicate(v: &Variety, a_list: &[BigInt]) -> String {
    format!(
        "p does not divide N(p) - a for a in [{}] over good p; bad: {}",
        list(a_list),
        v.bad_primes().describe()
    )
}

/// Density of good `p <= x`, `p ∤ m`, with `N(p) ≡ a (mod m)`.
pub fn scan_congruence_density(
    v: &Variety,
    a: i64,
    m: u64,
    x: u64,
    cfg: &CountConfig,
) -> Result<DensityReport, ScanError> {
    if m < 2 {
        return Err(ScanError::BadModulus(m));
    }
    let scan = DensityScan::new(congruence_predicate(v, a, m));
    extend_scan(scan, x, |p| classify_congruence(v, a, m, p, cfg))
}

/// Density of good `p <= x` with `p ∤ N(p) - a_i` for all `i`.
pub fn scan_nondivisibility(
    v: &Variety,
    a_list: &[BigInt],
    x: u64,
    cfg: &CountConfig,
) -> Result<DensityReport, ScanError> {
    let scan = DensityScan::new(nondivisibility_predicate(v, a_list));
    extend_scan(scan, x, |p| classify_nondivisibility(v, a_list, p, cfg))
}

/// Least good `p <= bound` with `p ∤ prod (N(p) - a_i)`.
pub fn least_good_prime_nondiv(
    v: &Variety,
    a_list: &[BigInt],
    bound: u64,
    cfg: &CountConfig,
) -> Result<Option<u64>, ScanError> {
    if bound < 2 {
        return Ok(None);
    }
    for p in PrimeIter::new(2, bound)? {
        match classify_nondivisibility(v, a_list, p, cfg) {
            Ok(Outcome::Hit) => return Ok(Some(p)),
            Ok(_) => {}
            Err(source) => {
                return Err(ScanError::Truncated {
                    p,
                    source,
                    partial: Box::new(DensityReport::new(nondivisibility_predicate(v, a_list))),
                })
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountConfig;
    use crate::poly::UniPoly;
    use alloc::vec;

    fn cq(q: usize) -> Variety {
        let mut c = vec![0i64; q + 1];
        c[0] = 1;
        c[q] = 1;
        let eq = alloc::format!("y^2 - x^{} - 1", q);
        Variety::from_strs(&["x", "y"], &[eq.as_str()])
            .unwrap()
            .with_discriminant_generator(UniPoly::from_i64("x", &c))
            .unwrap()
    }

    #[test]
    fn affine_line() {
        let cfg = CountConfig::default();
        let line = Variety::affine_space(&["x"]);
        let r0 = scan_congruence_density(&line, 0, 2, 100, &cfg).unwrap();
        assert_eq!(r0.running_density, 0.0);
        let r1 = scan_congruence_density(&line, 1, 2, 100, &cfg).unwrap();
        assert_eq!(r1.running_density, 1.0);
        assert_eq!(r1.good_primes_scanned, 24);
        assert_eq!(r1.bad_skipped, vec![2]);
        assert_eq!(r1.checkpoints, vec![(100, 1.0)]);
        let nd = scan_nondivisibility(&line, &[BigInt::from(0)], 100, &cfg).unwrap();
        assert_eq!(nd.hits, 0);
        assert_eq!(
            least_good_prime_nondiv(&line, &[BigInt::from(1)], 100, &cfg),
            Ok(Some(3))
        );
    }

    #[test]
    fn partition_of_residues() {
        let cfg = CountConfig::default();
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"])
            .unwrap()
            .with_discriminant_generator(UniPoly::from_i64("x", &[0, 1, 0, 1]))
            .unwrap();
        let m = 4;
        let reports: Vec<DensityReport> = (0..m as i64)
            .map(|a| scan_congruence_density(&v, a, m, 2000, &cfg).unwrap())
            .collect();
        let n = reports[0].checkpoints.len();
        assert_eq!(n, 3);
        for k in 0..n {
            let total: f64 = reports.iter().map(|r| r.checkpoints[k].1).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cq_has_no_early_hits() {
        let cfg = CountConfig::default();
        let c17 = cq(17);
        let r = scan_nondivisibility(&c17, &[BigInt::from(0)], 102, &cfg).unwrap();
        assert_eq!(r.hits, 0);
        assert_eq!(r.bad_skipped, vec![2, 17]);
        assert_eq!(
            least_good_prime_nondiv(&c17, &[BigInt::from(0)], 1000, &cfg),
            Ok(Some(103))
        );
        let c5 = cq(5);
        let r5 = scan_nondivisibility(&c5, &[BigInt::from(0)], 10, &cfg).unwrap();
        assert_eq!(r5.hits, 0);
    }

    #[test]
    fn resume_matches_single_pass() {
        let cfg = CountConfig::default();
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"]).unwrap();
        let a = [BigInt::from(0)];
        let whole = scan_nondivisibility(&v, &a, 3000, &cfg).unwrap();
        let first = scan_nondivisibility(&v, &a, 555, &cfg).unwrap();
        assert_eq!(first.checkpoints.last().unwrap().0, 555);
        let resumed = extend_scan(DensityScan::resume(first), 3000, |p| {
            classify_nondivisibility(&v, &a, p, &cfg)
        })
        .unwrap();
        assert_eq!(resumed, whole);
        assert_eq!(
            whole.checkpoints.iter().map(|c| c.0).collect::<Vec<_>>(),
            vec![100, 1000, 3000]
        );
    }

    #[test]
    fn truncation_keeps_partial_report() {
        let cfg = CountConfig {
            work_cap: 50,
            ..CountConfig::default()
        };
        let plane = Variety::from_strs(&["x", "y"], &["x*y - 1"]).unwrap();
        match scan_congruence_density(&plane, 0, 2, 100, &cfg) {
            Err(ScanError::Truncated { p, partial, .. }) => {
                assert_eq!(p, 11);
                assert_eq!(partial.x_max, 10);
                assert_eq!(partial.good_primes_scanned, 3);
            }
            other => panic!("{other:?}"),
        }
    }
}
