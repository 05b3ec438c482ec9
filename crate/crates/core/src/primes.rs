//! Prime generation and prime sums.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::ff::{mul_mod, pow_mod};
use crate::sum::blocked_sum;

/// Largest sieve limit accepted by [`primes_up_to`] and [`PrimeIter`].
pub const MAX_SIEVE_LIMIT: u64 = 1 << 40;

const SEGMENT: u64 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrimeError {
    #[error("sieve limit {0} outside [2, 2^40]")]
    LimitOutOfRange(u64),
    #[error("gcd({a}, {q}) != 1")]
    NotCoprime { a: i64, q: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("no prime in the progression below 2^64")]
    Exhausted,
    #[error("exponent alpha = {0} must exceed -1")]
    AlphaTooSmall(f64),
    #[error("L = {0} is below the minimum of 100")]
    LimitTooSmall(u64),
}

/// The primes up to a limit, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRange {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeRange {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.primes
    }
}

/// Plain sieve of Eratosthenes over `[0, n]`.
fn small_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Streams the primes in `[lo, hi]` segment by segment.
#[derive(Debug, Clone)]
pub struct PrimeIter {
    base: Vec<u64>,
    hi: u64,
    seg_lo: u64,
    buffer: Vec<u64>,
    next: usize,
}

impl PrimeIter {
    pub fn new(lo: u64, hi: u64) -> Result<Self, PrimeError> {
        if hi > MAX_SIEVE_LIMIT {
            return Err(PrimeError::LimitOutOfRange(hi));
        }
        Ok(PrimeIter {
            base: small_sieve(isqrt(hi)),
            hi,
            seg_lo: lo.max(2),
            buffer: Vec::new(),
            next: 0,
        })
    }

    fn fill(&mut self) -> bool {
        while self.seg_lo <= self.hi {
            let lo = self.seg_lo;
            let hi = (lo + SEGMENT - 1).min(self.hi);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &q in &self.base {
                if q * q > hi {
                    break;
                }
                let mut start = lo.div_ceil(q) * q;
                if start < q * q {
                    start = q * q;
                }
                let mut j = start;
                while j <= hi {
                    composite[(j - lo) as usize] = true;
                    j += q;
                }
            }
            self.buffer.clear();
            self.buffer.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            self.next = 0;
            self.seg_lo = hi + 1;
            if !self.buffer.is_empty() {
                return true;
            }
        }
        false
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.next >= self.buffer.len() && !self.fill() {
            return None;
        }
        let p = self.buffer[self.next];
        self.next += 1;
        Some(p)
    }
}

/// All primes `<= limit`, by segmented sieve.
pub fn primes_up_to(limit: u64) -> Result<PrimeRange, PrimeError> {
    if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(PrimeError::LimitOutOfRange(limit));
    }
    Ok(PrimeRange {
        limit,
        primes: PrimeIter::new(2, limit)?.collect(),
    })
}

/// Deterministic Miller-Rabin for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest prime `p` with `p ≡ a (mod q)`.
pub fn least_prime_in_ap(q: u64, a: i64) -> Result<u64, PrimeError> {
    if q < 2 {
        return Err(PrimeError::BadModulus(q));
    }
    let r = (a as i128).rem_euclid(q as i128) as u64;
    if gcd(r, q) != 1 {
        return Err(PrimeError::NotCoprime { a, q });
    }
    let mut n = r;
    loop {
        if is_prime(n) {
            return Ok(n);
        }
        n = n.checked_add(q).ok_or(PrimeError::Exhausted)?;
    }
}

/// `sum_{p <= L} p^alpha * log(p)^beta`, with compensated blocked summation.
pub fn prime_power_log_sum(limit: u64, alpha: f64, beta: f64) -> Result<f64, PrimeError> {
    if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(PrimeError::LimitOutOfRange(limit));
    }
    let terms = PrimeIter::new(2, limit)?.map(|p| {
        let x = p as f64;
        let mut t = if alpha == 0.0 {
            1.0
        } else {
            libm::pow(x, alpha)
        };
        if beta != 0.0 {
            t *= libm::pow(libm::log(x), beta);
        }
        t
    });
    Ok(blocked_sum(terms))
}

/// The prime sum divided by its asymptotic `L^(a+1)/(a+1) * log(L)^(b-1)`.
pub fn abel_ratio(limit: u64, alpha: f64, beta: f64) -> Result<f64, PrimeError> {
    if alpha <= -1.0 {
        return Err(PrimeError::AlphaTooSmall(alpha));
    }
    if limit < 100 {
        return Err(PrimeError::LimitTooSmall(limit));
    }
    let sum = prime_power_log_sum(limit, alpha, beta)?;
    let l = limit as f64;
    let main = libm::pow(l, alpha + 1.0) / (alpha + 1.0) * libm::pow(libm::log(l), beta - 1.0);
    Ok(sum / main)
}
