//! Curves and surfaces on which `p | N(p)` for many or all primes.
//!
//! * `C_q : y^2 = x^q + 1` has `N(p) = p` whenever `p ≢ 1 (mod q)`, because
//!   `x -> x^q + 1` permutes `F_p`.
//! * A genus-2 curve with `N(p) = p` for every small `p` is glued from
//!   per-prime quintics by coefficient-wise CRT.
//! * The surfaces `y^2 = a x^3 + b(t) x^2 + c(t) x + d(t)` with
//!   `deg b <= 1`, `deg c <= 3`, `deg d <= 5` satisfy `p | N(p)` at every
//!   odd prime.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::counting::{
    count_hyperelliptic, hyperelliptic_good_reduction, require_prime, CountConfig, CountError,
    Variety,
};
use crate::ff::{self, add_mod, mul_mod, pow_mod, QuadraticChar};
use crate::poly::{IntPoly, PolyError, UniPoly};
use crate::primes::{least_prime_in_ap, PrimeError, PrimeIter};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("no suitable quintic mod {p} found in {attempts} attempts")]
    SearchExhausted { p: u64, attempts: u64 },
    #[error("modulus {0} appears twice")]
    DuplicatePrime(u64),
    #[error("the coefficient a must be non-zero")]
    ZeroLeading,
    #[error("deg {name} = {degree} exceeds {bound}")]
    DegreeBound {
        name: &'static str,
        degree: usize,
        bound: usize,
    },
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn require_odd_prime(q: u64) -> Result<(), ConstructionError> {
    if q.is_multiple_of(2) || require_prime(q).is_err() {
        Err(ConstructionError::NotOddPrime(q))
    } else {
        Ok(())
    }
}

/// `x^q + 1`.
pub fn cq_polynomial(q: u64) -> UniPoly {
    let mut c = vec![BigInt::zero(); q as usize + 1];
    c[0] = BigInt::one();
    c[q as usize] = BigInt::one();
    UniPoly::new("x", c)
}

/// `y^2 - x^q - 1` with bad primes `{2, q}`.
pub fn build_cq(q: u64) -> Result<Variety, ConstructionError> {
    require_odd_prime(q)?;
    let vars = vec![String::from("x"), String::from("y")];
    let y2 = IntPoly::var(&vars, 1).checked_pow(2)?;
    let eq = &y2 - &cq_polynomial(q).to_intpoly_in(&vars)?;
    Ok(Variety::new(vars, vec![eq])?.with_bad_primes([q]))
}

/// Outcome of counting `C_q` at every good prime up to `P_0`, the least
/// prime `≡ 1 (mod q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CqReport {
    pub q: u64,
    pub p0: u64,
    pub n_at_p0: u64,
    pub primes_checked: u64,
    /// Good primes below `P_0` with `N(p) != p`; empty when the claim holds.
    pub failures: Vec<(u64, u64)>,
    pub holds: bool,
}

/// The per-prime step of [`verify_cq`]: `N_{C_q}(p)`.
pub fn cq_count(q: u64, p: u64, cfg: &CountConfig) -> Result<u64, ConstructionError> {
    Ok(count_hyperelliptic(&cq_polynomial(q), p, cfg)?.n_affine)
}

/// Good odd primes below `P_0`, which is returned alongside.
pub fn cq_primes(q: u64) -> Result<(Vec<u64>, u64), ConstructionError> {
    require_odd_prime(q)?;
    let p0 = least_prime_in_ap(q, 1)?;
    let primes = PrimeIter::new(3, p0 - 1)?.filter(|&p| p != q).collect();
    Ok((primes, p0))
}

/// The combine step: `counts[i]` is `N` at `primes[i]`.
pub fn assemble_cq_report(
    q: u64,
    p0: u64,
    n_at_p0: u64,
    primes: &[u64],
    counts: &[u64],
) -> CqReport {
    let failures: Vec<(u64, u64)> = primes
        .iter()
        .zip(counts)
        .filter(|(p, n)| **p != **n)
        .map(|(p, n)| (*p, *n))
        .collect();
    CqReport {
        q,
        p0,
        n_at_p0,
        primes_checked: primes.len() as u64,
        holds: failures.is_empty(),
        failures,
    }
}

pub fn verify_cq(q: u64, cfg: &CountConfig) -> Result<CqReport, ConstructionError> {
    let (primes, p0) = cq_primes(q)?;
    let counts = primes
        .iter()
        .map(|&p| cq_count(q, p, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let n0 = cq_count(q, p0, cfg)?;
    Ok(assemble_cq_report(q, p0, n0, &primes, &counts))
}

/// Affine count of `y^2 = f(x)` for `f` given by its coefficients mod `p`.
fn quintic_count(c: &[u64; 6], p: u64, chi: &QuadraticChar) -> u64 {
    let mut s = 0i64;
    for x in 0..p {
        let v = c
            .iter()
            .rev()
            .fold(0, |acc, &ci| add_mod(mul_mod(acc, x, p), ci, p));
        s += chi.chi(v) as i64;
    }
    (p as i64 + s) as u64
}

fn quintic_qualifies(c: &[u64; 6], p: u64, chi: &QuadraticChar) -> bool {
    ff::dense::is_squarefree(c, p) && quintic_count(c, p, chi) == p
}

/// A monic squarefree quintic over `F_p` whose curve has exactly `p`
/// affine points. Random candidates are drawn first; after `cap / 2`
/// failures the search continues in lexicographic order.
pub fn search_genus2_anomalous(p: u64, seed: u64, cap: u64) -> Result<UniPoly, ConstructionError> {
    require_odd_prime(p)?;
    let chi = QuadraticChar::new(p).map_err(CountError::from)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut c = [0u64, 0, 0, 0, 0, 1];
    let to_poly = |c: &[u64; 6]| UniPoly::new("x", c.iter().map(|&v| BigInt::from(v)).collect());
    let random = cap / 2;
    for _ in 0..random {
        for ci in c.iter_mut().take(5) {
            *ci = rng.gen_range(0..p);
        }
        if quintic_qualifies(&c, p, &chi) {
            return Ok(to_poly(&c));
        }
    }
    c = [0, 0, 0, 0, 0, 1];
    let mut attempts = random;
    loop {
        if attempts >= cap {
            return Err(ConstructionError::SearchExhausted { p, attempts });
        }
        attempts += 1;
        if quintic_qualifies(&c, p, &chi) {
            return Ok(to_poly(&c));
        }
        let mut i = 0;
        loop {
            if i == 5 {
                return Err(ConstructionError::SearchExhausted { p, attempts });
            }
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Coefficient-wise CRT lift with representatives in `(-M/2, M/2]`.
pub fn crt_combine(pairs: &[(u64, UniPoly)]) -> Result<UniPoly, ConstructionError> {
    let mut seen = BTreeSet::new();
    for (p, _) in pairs {
        if !seen.insert(*p) {
            return Err(ConstructionError::DuplicatePrime(*p));
        }
    }
    let var = pairs
        .first()
        .map(|(_, f)| String::from(f.variable()))
        .unwrap_or_else(|| String::from("x"));
    let len = pairs
        .iter()
        .map(|(_, f)| f.coeffs().len())
        .max()
        .unwrap_or(0);
    let mut modulus = BigInt::one();
    let mut lift = vec![BigInt::zero(); len];
    for (p, f) in pairs {
        let pb = BigInt::from(*p);
        // x ≡ lift (mod modulus), x ≡ c (mod p)
        let inv = BigInt::from(ff::inv_mod(ff::reduce_big(&modulus, *p), *p));
        for (i, slot) in lift.iter_mut().enumerate() {
            let c = f.coeffs().get(i).cloned().unwrap_or_default();
            let diff = (c - &*slot).mod_floor(&pb);
            let k = (diff * &inv).mod_floor(&pb);
            *slot += &modulus * k;
        }
        modulus *= pb;
    }
    for c in lift.iter_mut() {
        *c = symmetric_mod(c, &modulus);
    }
    Ok(UniPoly::new(&var, lift))
}

/// `y^2 = x^5 + 5x^3 + 5x`.
pub fn genus2_first() -> UniPoly {
    UniPoly::from_i64("x", &[0, 5, 0, 5, 0, 1])
}

/// `y^2 = x^5 + x`.
pub fn genus2_second() -> UniPoly {
    UniPoly::from_i64("x", &[0, 1, 0, 0, 0, 1])
}

/// Counts of both curves at one odd prime; `None` marks bad reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairPrime {
    pub p: u64,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
}

impl PairPrime {
    /// Some curve with good reduction at `p` has exactly `p` points.
    pub fn passes(&self) -> bool {
        self.n1 == Some(self.p) || self.n2 == Some(self.p)
    }

    /// At least one of the two curves has good reduction here.
    pub fn is_good(&self) -> bool {
        self.n1.is_some() || self.n2.is_some()
    }
}

/// The per-prime step of [`verify_genus2_pair`].
pub fn pair_prime(
    curves: &[UniPoly; 2],
    p: u64,
    cfg: &CountConfig,
) -> Result<PairPrime, ConstructionError> {
    let count = |h: &UniPoly| -> Result<Option<u64>, ConstructionError> {
        if hyperelliptic_good_reduction(h, p) {
            Ok(Some(count_hyperelliptic(h, p, cfg)?.n_affine))
        } else {
            Ok(None)
        }
    };
    Ok(PairPrime {
        p,
        n1: count(&curves[0])?,
        n2: count(&curves[1])?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairReport {
    pub curves: [String; 2],
    pub bound: u64,
    pub p_max: u64,
    /// Good odd primes below `bound` where neither curve has `p` points.
    pub failures_below_bound: Vec<u64>,
    pub holds: bool,
    /// First good odd prime `>= bound` where both curves fail.
    pub first_failure: Option<u64>,
    pub primes: Vec<PairPrime>,
}

/// The combine step; `records` must be in increasing prime order.
pub fn assemble_pair_report(
    curves: &[UniPoly; 2],
    bound: u64,
    p_max: u64,
    records: Vec<PairPrime>,
) -> PairReport {
    let failing = |r: &&PairPrime| r.is_good() && !r.passes();
    let failures_below_bound: Vec<u64> = records
        .iter()
        .filter(|r| r.p < bound)
        .filter(failing)
        .map(|r| r.p)
        .collect();
    let first_failure = records
        .iter()
        .filter(|r| r.p >= bound)
        .find(failing)
        .map(|r| r.p);
    PairReport {
        curves: [format!("{}", curves[0]), format!("{}", curves[1])],
        bound,
        p_max,
        holds: failures_below_bound.is_empty(),
        failures_below_bound,
        first_failure,
        primes: records,
    }
}

/// Checks the disjunction `N_1(p) = p or N_2(p) = p` at every good odd
/// `p < bound`, and looks for the first failure up to `p_max`.
pub fn verify_genus2_pair(
    curves: &[UniPoly; 2],
    bound: u64,
    p_max: u64,
    cfg: &CountConfig,
) -> Result<PairReport, ConstructionError> {
    let top = p_max.max(bound.saturating_sub(1));
    let records = if top >= 3 {
        PrimeIter::new(3, top)?
            .map(|p| pair_prime(curves, p, cfg))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    Ok(assemble_pair_report(curves, bound, p_max, records))
}

/// `y^2 = a x^3 + b(t) x^2 + c(t) x + d(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonExSurface {
    a: BigInt,
    b: UniPoly,
    c: UniPoly,
    d: UniPoly,
}

impl NonExSurface {
    pub fn new(a: BigInt, b: UniPoly, c: UniPoly, d: UniPoly) -> Result<Self, ConstructionError> {
        if a.is_zero() {
            return Err(ConstructionError::ZeroLeading);
        }
        for (name, poly, bound) in [("b", &b, 1), ("c", &c, 3), ("d", &d, 5)] {
            if let Some(degree) = poly.degree().filter(|&d| d > bound) {
                return Err(ConstructionError::DegreeBound {
                    name,
                    degree,
                    bound,
                });
            }
        }
        Ok(NonExSurface { a, b, c, d })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &UniPoly {
        &self.b
    }

    pub fn c(&self) -> &UniPoly {
        &self.c
    }

    pub fn d(&self) -> &UniPoly {
        &self.d
    }

    /// `a x^3 + b(t) x^2 + c(t) x + d(t)` over `[x, t]`.
    pub fn cubic(&self) -> Result<IntPoly, ConstructionError> {
        let vars = vec![String::from("x"), String::from("t")];
        let x = IntPoly::var(&vars, 0);
        let lift = |u: &UniPoly| -> Result<IntPoly, PolyError> {
            UniPoly::new("t", u.coeffs().to_vec()).to_intpoly_in(&vars)
        };
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let a = IntPoly::constant(&vars, self.a.clone());
        let f = &(&(&(&a * &x3) + &(&lift(&self.b)? * &x2)) + &(&lift(&self.c)? * &x))
            + &lift(&self.d)?;
        Ok(f)
    }

    /// The surface as a variety in `[x, t, y]`.
    pub fn variety(&self) -> Result<Variety, ConstructionError> {
        let vars = vec![String::from("x"), String::from("t"), String::from("y")];
        let f = self.cubic()?.embed(&vars)?;
        let y2 = IntPoly::var(&vars, 2).checked_pow(2)?;
        Ok(Variety::new(vars, vec![&y2 - &f])?)
    }

    /// `N_S(p) = sum_{x, t} (1 + chi(f(x, t)))`.
    pub fn count(&self, p: u64, cfg: &CountConfig) -> Result<u64, ConstructionError> {
        require_odd_prime(p)?;
        crate::counting::check_work(p as u128 * p as u128, cfg)?;
        let chi = QuadraticChar::with_cap(p, cfg.table_cap).map_err(CountError::from)?;
        let a = ff::reduce_big(&self.a, p);
        let (b, c, d) = (
            self.b.reduce_mod(p),
            self.c.reduce_mod(p),
            self.d.reduce_mod(p),
        );
        let mut s = 0i64;
        for t in 0..p {
            let coeffs = [d.eval(t), c.eval(t), b.eval(t), a];
            for x in 0..p {
                let v = coeffs
                    .iter()
                    .rev()
                    .fold(0, |acc, &k| add_mod(mul_mod(acc, x, p), k, p));
                s += chi.chi(v) as i64;
            }
        }
        Ok((p as i64 * p as i64 + s) as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NonExReport {
    pub p_max: u64,
    pub counts: Vec<(u64, u64)>,
    /// Primes with `p ∤ N_S(p)`; any entry contradicts the theorem.
    pub violations: Vec<u64>,
    pub holds: bool,
}

/// The combine step of [`check_nonex`].
pub fn assemble_nonex_report(p_max: u64, counts: Vec<(u64, u64)>) -> NonExReport {
    let violations: Vec<u64> = counts
        .iter()
        .filter(|(p, n)| n % p != 0)
        .map(|(p, _)| *p)
        .collect();
    NonExReport {
        p_max,
        holds: violations.is_empty(),
        violations,
        counts,
    }
}

/// Counts the surface at every odd prime `p <= p_max`.
pub fn check_nonex(
    s: &NonExSurface,
    p_max: u64,
    cfg: &CountConfig,
) -> Result<NonExReport, ConstructionError> {
    let counts = if p_max >= 3 {
        PrimeIter::new(3, p_max)?
            .map(|p| s.count(p, cfg).map(|n| (p, n)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    Ok(assemble_nonex_report(p_max, counts))
}

/// `sum_{x in F_p} x^c mod p`.
pub fn hua_sum(p: u64, c: u64) -> u64 {
    (1..p).fold(0, |acc, x| add_mod(acc, pow_mod(x, c, p), p))
}

/// A surface whose coefficients are drawn uniformly from `[-h, h]`, with
/// `b, c, d` of full allowed degree.
pub fn random_nonex_surface<R: Rng>(rng: &mut R, h: i64) -> NonExSurface {
    let mut draw = |n: usize| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-h..=h)).collect() };
    let mut a = 0;
    while a == 0 {
        a = draw(1)[0];
    }
    let b = UniPoly::from_i64("t", &draw(2));
    let c = UniPoly::from_i64("t", &draw(4));
    let d = UniPoly::from_i64("t", &draw(6));
    NonExSurface::new(BigInt::from(a), b, c, d).expect("degrees within bounds")
}

/// Representative of `c` modulo `m > 0` in `(-m/2, m/2]`.
pub fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if r > m / 2 {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_affine_bruteforce;
    use crate::primes::is_prime;

    #[test]
    fn cq_shapes() {
        let c17 = build_cq(17).unwrap();
        assert_eq!(format!("{}", c17.equations()[0]), "-x^17 + y^2 - 1");
        assert!(!c17.is_good(2) && !c17.is_good(17) && c17.is_good(3));
        assert!(build_cq(3).is_ok());
        assert_eq!(build_cq(15), Err(ConstructionError::NotOddPrime(15)));
        assert_eq!(build_cq(2), Err(ConstructionError::NotOddPrime(2)));
    }

    #[test]
    fn cq_small_cases() {
        let cfg = CountConfig::default();
        let r5 = verify_cq(5, &cfg).unwrap();
        assert_eq!((r5.p0, r5.primes_checked), (11, 2));
        assert!(r5.holds);
        let r17 = verify_cq(17, &cfg).unwrap();
        assert_eq!((r17.p0, r17.n_at_p0), (103, 87));
        assert!(r17.holds);
        // the bijection argument holds at every p ≢ 1 mod q
        for p in PrimeIter::new(3, 300)
            .unwrap()
            .filter(|&p| p != 17 && p % 17 != 1)
        {
            assert_eq!(cq_count(17, p, &cfg).unwrap(), p);
        }
    }

    #[test]
    fn genus2_search() {
        let chi5 = QuadraticChar::new(5).unwrap();
        let x5x = [0, 1, 0, 0, 0, 1];
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^5 - x"]).unwrap();
        assert_eq!(
            quintic_count(&x5x, 5, &chi5),
            count_affine_bruteforce(&v, 5, &CountConfig::default()).unwrap()
        );
        for p in [3u64, 5, 7, 11, 13, 101] {
            let f = search_genus2_anomalous(p, 7, 1 << 20).unwrap();
            assert_eq!(f.degree(), Some(5));
            assert!(hyperelliptic_good_reduction(&f, p));
            let n = count_hyperelliptic(&f, p, &CountConfig::default())
                .unwrap()
                .n_affine;
            assert_eq!(n, p);
        }
        assert_eq!(
            search_genus2_anomalous(7, 1, 1),
            search_genus2_anomalous(7, 1, 1)
        );
        assert!(matches!(
            search_genus2_anomalous(7, 1, 0),
            Err(ConstructionError::SearchExhausted { .. })
        ));
    }

    #[test]
    fn crt_examples() {
        let f = UniPoly::from_i64("x", &[0, 1, 0, 0, 0, 1]);
        assert_eq!(crt_combine(&[(5, f.clone())]).unwrap(), f);
        let g = crt_combine(&[
            (3, UniPoly::from_i64("x", &[1, 0, 0, 0, 0, 1])),
            (5, UniPoly::from_i64("x", &[2, 0, 0, 0, 0, 1])),
        ])
        .unwrap();
        assert_eq!(g.coeffs()[0], BigInt::from(7));
        assert_eq!(g.leading_coeff(), BigInt::one());
        assert_eq!(
            crt_combine(&[(3, f.clone()), (3, f.clone())]),
            Err(ConstructionError::DuplicatePrime(3))
        );
    }

    #[test]
    fn crt_reduces_back() {
        let primes: Vec<u64> = (3..60).filter(|&p| is_prime(p)).collect();
        let pairs: Vec<(u64, UniPoly)> = primes
            .iter()
            .map(|&p| (p, search_genus2_anomalous(p, 11, 1 << 22).unwrap()))
            .collect();
        let f = crt_combine(&pairs).unwrap();
        assert_eq!(f.degree(), Some(5));
        assert!(f.leading_coeff().is_one());
        let m: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
        for (p, fp) in &pairs {
            assert_eq!(f.dense_mod(*p), fp.dense_mod(*p));
            assert_eq!(
                count_hyperelliptic(&f, *p, &CountConfig::default())
                    .unwrap()
                    .n_affine,
                *p
            );
        }
        for c in f.coeffs() {
            assert_eq!(&symmetric_mod(c, &m), c);
        }
    }

    #[test]
    fn genus2_pair() {
        let curves = [genus2_first(), genus2_second()];
        let cfg = CountConfig::default();
        let rec = pair_prime(&curves, 3, &cfg).unwrap();
        assert_eq!(rec.n2, Some(3));
        let r = verify_genus2_pair(&curves, 401, 401, &cfg).unwrap();
        assert!(r.holds, "{:?}", r.failures_below_bound);
    }

    #[test]
    fn nonex_surfaces() {
        let cfg = CountConfig::default();
        let zero = UniPoly::from_i64("t", &[]);
        let cube =
            NonExSurface::new(BigInt::one(), zero.clone(), zero.clone(), zero.clone()).unwrap();
        let v = cube.variety().unwrap();
        for p in [3u64, 5, 7] {
            assert_eq!(cube.count(p, &cfg).unwrap(), p * p);
            assert_eq!(count_affine_bruteforce(&v, p, &cfg).unwrap(), p * p);
        }
        let bad = NonExSurface::new(
            BigInt::one(),
            zero.clone(),
            zero.clone(),
            UniPoly::from_i64("t", &[0, 0, 0, 0, 0, 0, 1]),
        );
        assert!(matches!(
            bad,
            Err(ConstructionError::DegreeBound {
                name: "d",
                degree: 6,
                bound: 5
            })
        ));
        assert_eq!(
            NonExSurface::new(BigInt::zero(), zero.clone(), zero.clone(), zero),
            Err(ConstructionError::ZeroLeading)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let s = random_nonex_surface(&mut rng, 9);
            let r = check_nonex(&s, 41, &cfg).unwrap();
            assert!(r.holds, "{:?}", r.violations);
            let v = s.variety().unwrap();
            for p in [3u64, 5, 7] {
                assert_eq!(
                    s.count(p, &cfg).unwrap(),
                    count_affine_bruteforce(&v, p, &cfg).unwrap()
                );
            }
        }
    }

    #[test]
    fn hua_examples() {
        assert_eq!(hua_sum(5, 2), 0);
        assert_eq!(hua_sum(5, 4), 4);
        assert_eq!(hua_sum(7, 3), 0);
    }
}
