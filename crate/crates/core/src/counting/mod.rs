//! The point-counting engine.
//!
//! A [`Variety`] is a list of integer polynomial equations in named
//! variables together with an explicit rule for which primes are bad. For
//! each prime `p` the engine returns the exact number of solutions in
//! `F_p^n`, either by plain enumeration ([`count_affine_bruteforce`]) or by
//! the character-sum planner ([`count_affine_charsum`]), which replaces a
//! variable occurring only as `c*y^2` in a single equation by the factor
//! `1 + chi(-c * rest)`. Odd-degree hyperelliptic models additionally get
//! their Frobenius trace ([`count_hyperelliptic`]).

mod brute;
mod expsum;
mod hyper;
mod plan;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ff::{self, FieldError, DEFAULT_TABLE_CAP};
use crate::poly::{parse_poly, IntPoly, ParseError, PolyError, UniPoly};

pub use brute::count_affine_bruteforce;
pub use expsum::{exp_sum, parseval_check};
pub use hyper::{count_hyperelliptic, hyperelliptic_good_reduction};
pub use plan::{count_affine_charsum, CharSumPlan};

/// Default bound on evaluated tuples per `(variety, prime)` call.
pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;

/// Generators above this degree are tested for bad reduction through
/// squarefreeness modulo `p` rather than through a cached discriminant.
const CACHED_DISCRIMINANT_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    pub work_cap: u64,
    pub table_cap: u64,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            work_cap: DEFAULT_WORK_CAP,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("work cap exceeded: {required} evaluations needed, cap is {cap}")]
    WorkCapExceeded { required: u128, cap: u64 },
    #[error("no variable occurs only as a constant multiple of its square in one equation")]
    NoEliminableStructure,
    #[error("character sums need an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("unsupported model: {0}")]
    UnsupportedModel(&'static str),
    #[error("point count does not fit in 64 bits")]
    CountOverflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Explicit bad-prime rule: `2`, a finite user-supplied set, and the prime
/// divisors of `2 * lc * disc` of an optional univariate generator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BadPrimes {
    explicit: BTreeSet<u64>,
    generator: Option<UniPoly>,
    modulus: Option<BigInt>,
}

impl BadPrimes {
    pub fn explicit(&self) -> &BTreeSet<u64> {
        &self.explicit
    }

    pub fn generator(&self) -> Option<&UniPoly> {
        self.generator.as_ref()
    }

    /// `2 * lc * disc` of the generator, when it was cheap enough to cache.
    pub fn generator_modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn is_bad(&self, p: u64) -> bool {
        if p == 2 || self.explicit.contains(&p) {
            return true;
        }
        match (&self.modulus, &self.generator) {
            (Some(m), _) => ff::reduce_big(m, p) == 0,
            (None, Some(h)) => !hyperelliptic_good_reduction(h, p),
            (None, None) => false,
        }
    }

    /// Human-readable statement of the rule, used in reports.
    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut s = String::from("p = 2");
        for p in &self.explicit {
            if *p != 2 {
                let _ = write!(s, ", p = {}", p);
            }
        }
        if let Some(h) = &self.generator {
            let _ = write!(s, ", p | 2*lc*disc({})", h);
        }
        s
    }
}

/// A system of integer polynomial equations in named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variety {
    vars: Vec<String>,
    equations: Vec<IntPoly>,
    bad: BadPrimes,
}

impl Variety {
    /// Every equation is re-expressed over `vars`; an equation mentioning
    /// an undeclared variable is rejected.
    pub fn new(vars: Vec<String>, equations: Vec<IntPoly>) -> Result<Self, CountError> {
        let equations = equations
            .iter()
            .map(|e| e.embed(&vars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Variety {
            vars,
            equations,
            bad: BadPrimes::default(),
        })
    }

    /// Parses each equation text over `vars`.
    pub fn from_strs(vars: &[&str], equations: &[&str]) -> Result<Self, CountError> {
        let vars: Vec<String> = vars.iter().map(|s| String::from(*s)).collect();
        let eqs = equations
            .iter()
            .map(|e| parse_poly(e, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, eqs)
    }

    /// Affine space of dimension `vars.len()`.
    pub fn affine_space(vars: &[&str]) -> Self {
        Self::from_strs(vars, &[]).expect("no equations")
    }

    pub fn with_bad_primes(mut self, primes: impl IntoIterator<Item = u64>) -> Self {
        self.bad.explicit.extend(primes);
        self
    }

    /// Declares `h` whose `2 * lc * disc` marks the bad primes.
    pub fn with_discriminant_generator(mut self, h: UniPoly) -> Result<Self, CountError> {
        let deg = h
            .degree()
            .filter(|&d| d >= 1)
            .ok_or(PolyError::DegreeZero)?;
        self.bad.modulus = if deg <= CACHED_DISCRIMINANT_MAX_DEGREE {
            Some(BigInt::from(2) * h.leading_coeff() * h.discriminant()?)
        } else {
            None
        };
        self.bad.generator = Some(h);
        Ok(self)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn equations(&self) -> &[IntPoly] {
        &self.equations
    }

    pub fn bad_primes(&self) -> &BadPrimes {
        &self.bad
    }

    pub fn dimension_of_ambient(&self) -> usize {
        self.vars.len()
    }

    pub fn is_good(&self, p: u64) -> bool {
        !self.bad.is_bad(p)
    }

    /// `(y, h)` when the variety is the single equation `y^2 = h(x)` with
    /// `h` of odd degree at least 3 in the other variable.
    pub fn hyperelliptic_model(&self) -> Option<(usize, UniPoly)> {
        if self.equations.len() != 1 || self.vars.len() != 2 {
            return None;
        }
        let eq = &self.equations[0];
        for y in 0..2 {
            let x = 1 - y;
            let parts = eq.coefficients_in(y);
            if parts.keys().any(|&k| k != 0 && k != 2) {
                continue;
            }
            let Some(sq) = parts.get(&2).and_then(IntPoly::as_constant) else {
                continue;
            };
            let rest = parts
                .get(&0)
                .cloned()
                .unwrap_or_else(|| IntPoly::zero(&self.vars));
            let h = if sq.is_one() {
                -&rest
            } else if (-&sq).is_one() {
                rest
            } else {
                continue;
            };
            let Ok(h) = h.to_univariate(x) else { continue };
            match h.degree() {
                Some(d) if d >= 3 && d % 2 == 1 => return Some((y, h)),
                _ => continue,
            }
        }
        None
    }
}

/// Number of points of a variety at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointCountRecord {
    pub p: u64,
    pub n_affine: u64,
    pub n_mod_p: u64,
    pub trace: Option<i64>,
    pub good_reduction: bool,
}

impl PointCountRecord {
    pub fn new(p: u64, n_affine: u64, trace: Option<i64>, good_reduction: bool) -> Self {
        PointCountRecord {
            p,
            n_affine,
            n_mod_p: n_affine % p,
            trace,
            good_reduction,
        }
    }

    /// Whether `p` divides `N(p) - a`.
    pub fn divides_shifted(&self, a: &BigInt) -> bool {
        let p = BigInt::from(self.p);
        (BigInt::from(self.n_affine) - a).mod_floor(&p).is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMethod {
    /// Hyperelliptic fast path, then the planner, then enumeration.
    #[default]
    Auto,
    BruteForce,
    CharSum,
}

/// Counts `V(F_p)` with the chosen method and labels the prime good or bad.
pub fn count_points(
    v: &Variety,
    p: u64,
    method: CountMethod,
    cfg: &CountConfig,
) -> Result<PointCountRecord, CountError> {
    let good = v.is_good(p);
    let model = if p % 2 == 1 {
        v.hyperelliptic_model()
    } else {
        None
    };
    let n = match method {
        CountMethod::BruteForce => count_affine_bruteforce(v, p, cfg)?,
        CountMethod::CharSum => count_affine_charsum(v, p, cfg)?,
        CountMethod::Auto => {
            if let Some((_, h)) = &model {
                let rec = count_hyperelliptic(h, p, cfg)?;
                return Ok(PointCountRecord {
                    good_reduction: good,
                    ..rec
                });
            }
            match count_affine_charsum(v, p, cfg) {
                Ok(n) => n,
                Err(CountError::NoEliminableStructure) | Err(CountError::EvenPrime(_)) => {
                    count_affine_bruteforce(v, p, cfg)?
                }
                Err(e) => return Err(e),
            }
        }
    };
    let trace = model.map(|_| p as i64 - n as i64);
    Ok(PointCountRecord::new(p, n, trace, good))
}

pub(crate) fn require_prime(p: u64) -> Result<(), CountError> {
    if crate::primes::is_prime(p) {
        Ok(())
    } else {
        Err(CountError::NotPrime(p))
    }
}

pub(crate) fn check_work(required: u128, cfg: &CountConfig) -> Result<(), CountError> {
    if required > cfg.work_cap as u128 {
        Err(CountError::WorkCapExceeded {
            required,
            cap: cfg.work_cap,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn pow_u128(base: u64, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_hyperelliptic_models() {
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"]).unwrap();
        let (y, h) = v.hyperelliptic_model().unwrap();
        assert_eq!(y, 1);
        assert_eq!(h, UniPoly::from_i64("x", &[0, 1, 0, 1]));
        let flipped = Variety::from_strs(&["y", "x"], &["x^17 + 1 - y^2"]).unwrap();
        assert_eq!(flipped.hyperelliptic_model().unwrap().0, 0);
        let even = Variety::from_strs(&["x", "y"], &["y^2 - x^4 - 1"]).unwrap();
        assert!(even.hyperelliptic_model().is_none());
        let scaled = Variety::from_strs(&["x", "y"], &["2*y^2 - x^3 - 1"]).unwrap();
        assert!(scaled.hyperelliptic_model().is_none());
    }

    #[test]
    fn bad_prime_rule() {
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"])
            .unwrap()
            .with_discriminant_generator(UniPoly::from_i64("x", &[0, 1, 0, 1]))
            .unwrap()
            .with_bad_primes([11]);
        // 2 * 1 * (-4) = -8
        assert!(!v.is_good(2));
        assert!(v.is_good(3));
        assert!(!v.is_good(11));
        assert!(v.is_good(13));
        assert_eq!(v.bad_primes().generator_modulus(), Some(&BigInt::from(-8)));
    }

    #[test]
    fn undeclared_variable_rejected() {
        let vars: Vec<String> = ["x", "t"].iter().map(|s| String::from(*s)).collect();
        let eq = parse_poly("x + t", &vars).unwrap();
        let err = Variety::new(alloc::vec![String::from("x")], alloc::vec![eq]).unwrap_err();
        assert_eq!(
            err,
            CountError::Poly(PolyError::UnknownVariable("t".into()))
        );
    }

    #[test]
    fn auto_reports_trace() {
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"]).unwrap();
        let rec = count_points(&v, 5, CountMethod::Auto, &CountConfig::default()).unwrap();
        assert_eq!(rec, PointCountRecord::new(5, 3, Some(2), true));
        let rec2 = count_points(&v, 2, CountMethod::Auto, &CountConfig::default()).unwrap();
        assert!(!rec2.good_reduction);
        assert_eq!(rec2.trace, None);
    }
}
