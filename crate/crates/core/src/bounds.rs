//! Closed-form sieve constants and the value-at-1 criteria.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::ff::{mul_mod, pow_mod};
use crate::primes::{is_prime, PrimeIter};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("at least one excluded trace is required")]
    BadExclusionCount,
    #[error("K must be positive, got {0}")]
    BadConstant(f64),
    #[error("height T must be at least 2, got {0}")]
    BadHeight(f64),
    #[error("2*K*log(T) = {0} must exceed 1")]
    DomainViolation(f64),
    #[error("ell = {ell} must exceed n = {n}")]
    EllTooSmall { ell: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} is divisible by ell = {ell}")]
    NotCoprime { p: u64, ell: u64 },
    #[error("enumeration of {required} polynomials exceeds the cap {cap}")]
    WorkCapExceeded { required: u128, cap: u64 },
    #[error("nu has no value at p = {0}")]
    MissingNu(u64),
    #[error("nu({p}) = {value} is not positive")]
    NonPositiveNu { p: u64, value: f64 },
    #[error("need b_minus < b_plus, got {b_minus} and {b_plus}")]
    EmptyBand { b_minus: i64, b_plus: i64 },
}

/// `4g^2 + 2g + 4`.
pub fn gamma(g: u32) -> u64 {
    let g = g as u64;
    4 * g * g + 2 * g + 4
}

/// Genus, number of excluded traces, the constant `K_g` and the height `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SieveParams {
    pub g: u32,
    pub n: u32,
    pub k: f64,
    pub t: f64,
}

impl SieveParams {
    pub fn new(g: u32, n: u32, k: f64, t: f64) -> Result<Self, BoundsError> {
        if g == 0 {
            return Err(BoundsError::BadGenus);
        }
        if n == 0 {
            return Err(BoundsError::BadExclusionCount);
        }
        if k.is_nan() || k <= 0.0 {
            return Err(BoundsError::BadConstant(k));
        }
        if t.is_nan() || t < 2.0 {
            return Err(BoundsError::BadHeight(t));
        }
        Ok(SieveParams { g, n, k, t })
    }

    pub fn gamma(&self) -> u64 {
        gamma(self.g)
    }
}

/// `(2K log T)^(γ/2) * log(2K log T)^((γ/2)(1 - 2/(γ+2n-2)))`.
pub fn q_bound(params: &SieveParams) -> Result<f64, BoundsError> {
    let l = 2.0 * params.k * libm::log(params.t);
    if l.is_nan() || l <= 1.0 {
        return Err(BoundsError::DomainViolation(l));
    }
    let half = params.gamma() as f64 / 2.0;
    let tail = 1.0 - 2.0 / (params.gamma() as f64 + 2.0 * params.n as f64 - 2.0);
    Ok(libm::pow(l, half) * libm::pow(libm::log(l), half * tail))
}

/// `(ell - n)/ell * (ell/(ell + 1))^(2g^2 + g + 1)`, exactly.
pub fn delta_ell(ell: u64, g: u32, n: u64) -> Result<BigRational, BoundsError> {
    if !is_prime(ell) {
        return Err(BoundsError::NotPrime(ell));
    }
    if ell <= n {
        return Err(BoundsError::EllTooSmall { ell, n });
    }
    let e = 2 * g * g + g + 1;
    let l = BigInt::from(ell);
    let head = BigRational::new(BigInt::from(ell - n), l.clone());
    let ratio = BigRational::new(l.clone(), l + BigInt::one());
    Ok(head * Pow::pow(ratio, e))
}

/// Monic degree-`2g` polynomials over `F_ell` with `T^(2g) f(p/T) = p^g f(T)`
/// whose linear coefficient `f'(0)` avoids every value in `excluded`
/// (taken modulo `ell`). Counted by enumerating all `ell^(2g)` candidates.
pub fn count_p_symplectic(
    ell: u64,
    g: u32,
    p: u64,
    excluded: &[i64],
    cap: u64,
) -> Result<u64, BoundsError> {
    if g == 0 {
        return Err(BoundsError::BadGenus);
    }
    if !is_prime(ell) {
        return Err(BoundsError::NotPrime(ell));
    }
    if p.is_multiple_of(ell) {
        return Err(BoundsError::NotCoprime { p, ell });
    }
    let deg = 2 * g as usize;
    let required = (0..deg).fold(1u128, |acc, _| acc.saturating_mul(ell as u128));
    if required > cap as u128 {
        return Err(BoundsError::WorkCapExceeded { required, cap });
    }
    let p = p % ell;
    let banned: Vec<u64> = excluded
        .iter()
        .map(|a| (*a as i128).rem_euclid(ell as i128) as u64)
        .collect();
    // c[j] is the coefficient of T^j; c[deg] = 1 is implicit.
    let mut c = vec![0u64; deg];
    let pg = pow_mod(p, g as u64, ell);
    let mut count = 0;
    loop {
        let symplectic = (0..=deg).all(|j| {
            let cj = if j == deg { 1 } else { c[j] };
            let mirrored = if deg - j == deg { 1 } else { c[deg - j] };
            mul_mod(cj, pow_mod(p, j as u64, ell), ell) == mul_mod(pg, mirrored, ell)
        });
        if symplectic && !banned.contains(&c[1]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == deg {
                return Ok(count);
            }
            c[i] += 1;
            if c[i] < ell {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Gallagher's larger sieve:
/// `sum log p / (sum log p / nu(p) - log(2T))` over primes `p <= Q`, or
/// `None` when the denominator is not positive.
pub fn larger_sieve_bound(
    q: u64,
    t: f64,
    nu: &BTreeMap<u64, f64>,
) -> Result<Option<f64>, BoundsError> {
    let mut num = crate::sum::Compensated::default();
    let mut den = crate::sum::Compensated::default();
    if q >= 2 {
        for p in PrimeIter::new(2, q).map_err(|_| BoundsError::MissingNu(q))? {
            let v = *nu.get(&p).ok_or(BoundsError::MissingNu(p))?;
            if v.is_nan() || v <= 0.0 {
                return Err(BoundsError::NonPositiveNu { p, value: v });
            }
            let lp = libm::log(p as f64);
            num.add(lp);
            den.add(lp / v);
        }
    }
    let den = den.value() - libm::log(2.0 * t);
    Ok(if den > 0.0 {
        Some(num.value() / den)
    } else {
        None
    })
}

/// `M_{X,a}(1)` against the band `[b_minus, b_plus]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Value1Input {
    pub m1: i64,
    pub b_minus: i64,
    pub b_plus: i64,
}

impl Value1Input {
    pub fn new(m1: i64, b_minus: i64, b_plus: i64) -> Result<Self, BoundsError> {
        if b_minus >= b_plus {
            return Err(BoundsError::EmptyBand { b_minus, b_plus });
        }
        Ok(Value1Input {
            m1,
            b_minus,
            b_plus,
        })
    }
}

/// `max(|M1 - b_-|, |M1 - b_+|) >= b_+ - b_-`.
pub fn check_value1(v: Value1Input) -> bool {
    let lo = (v.m1 as i128 - v.b_minus as i128).abs();
    let hi = (v.m1 as i128 - v.b_plus as i128).abs();
    lo.max(hi) >= v.b_plus as i128 - v.b_minus as i128
}

/// Curve case: `M1 = chi - a` in the band `[0, 2]`.
pub fn curve_value1(chi: i64, a: i64) -> bool {
    check_value1(Value1Input {
        m1: chi - a,
        b_minus: 0,
        b_plus: 2,
    })
}

/// Surface case, with `r = b1(Y) + chi_c(C) + a`: `r >= 2 b2(Y) + b2(C) + 2`
/// or `r <= 0`.
pub fn surface_value1(b1_y: i64, b2_y: i64, b2_c: i64, chi_c: i64, a: i64) -> bool {
    let r = b1_y + chi_c + a;
    r >= 2 * b2_y + b2_c + 2 || r <= 0
}

/// The surface criterion assembled from `M1` and its band.
pub fn surface_value1_assembled(b1_y: i64, b2_y: i64, b2_c: i64, chi_c: i64, a: i64) -> bool {
    check_value1(Value1Input {
        m1: b2_y - b1_y + 1 - chi_c - a,
        b_minus: -b2_y - b2_c - 1,
        b_plus: b2_y + 1,
    })
}

/// Threefold case, with `s = b1(S) - b0(S) - a`: `s >= 2 b2(S)` or
/// `s <= -2 (b2(Y) + 1)`.
pub fn threefold_value1(b2_y: i64, b0_s: i64, b1_s: i64, b2_s: i64, a: i64) -> bool {
    let s = b1_s - b0_s - a;
    s >= 2 * b2_s || s <= -2 * (b2_y + 1)
}

/// The threefold criterion assembled from `M1` and its band.
pub fn threefold_value1_assembled(b2_y: i64, b0_s: i64, b1_s: i64, b2_s: i64, a: i64) -> bool {
    let width = b2_y + b2_s + 1;
    check_value1(Value1Input {
        m1: b2_y + 1 - b2_s + b1_s - b0_s - a,
        b_minus: -width,
        b_plus: width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gamma_values() {
        assert_eq!((gamma(1), gamma(2), gamma(3)), (10, 24, 46));
        for g in 1..50 {
            assert!(gamma(g).is_multiple_of(2) && gamma(g) >= 10);
        }
    }

    #[test]
    fn q_bound_values() {
        let p = SieveParams::new(2, 1, 1.0, core::f64::consts::E).unwrap();
        let want = libm::pow(2.0, 12.0) * libm::pow(core::f64::consts::LN_2, 11.0);
        let got = q_bound(&p).unwrap();
        assert!(((got - want) / want).abs() < 1e-12);
        let p = SieveParams::new(2, 1, 1.0, libm::exp(core::f64::consts::E / 2.0)).unwrap();
        let e12 = libm::exp(12.0);
        assert!(((q_bound(&p).unwrap() - e12) / e12).abs() < 1e-12);
        let tiny = SieveParams::new(1, 1, 0.1, 2.0).unwrap();
        assert!(matches!(
            q_bound(&tiny),
            Err(BoundsError::DomainViolation(_))
        ));
        let mut last = 0.0;
        for t in [3.0, 10.0, 100.0, 1e4, 1e8] {
            let q = q_bound(&SieveParams::new(2, 1, 1.0, t).unwrap()).unwrap();
            assert!(q > last);
            last = q;
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_ell(2, 1, 1).unwrap(), rat(8, 81));
        assert_eq!(delta_ell(3, 1, 1).unwrap(), rat(27, 128));
        assert!(delta_ell(2, 1, 2).is_err());
        let ell = 1_000_003u64;
        let d = delta_ell(ell, 1, 1).unwrap();
        let approx = 1.0 - 5.0 / ell as f64;
        let val = num_traits::ToPrimitive::to_f64(&d).unwrap();
        assert!((val - approx).abs() < 1e-10);
    }

    #[test]
    fn delta_increases_in_ell() {
        for (g, n) in [(1, 1), (2, 1), (2, 3)] {
            let ells: Vec<u64> = (2..=97).filter(|&l| is_prime(l) && l > n).collect();
            for w in ells.windows(2) {
                assert!(delta_ell(w[0], g, n).unwrap() < delta_ell(w[1], g, n).unwrap());
            }
            assert!(delta_ell(97, g, n).unwrap() < BigRational::one());
        }
    }

    #[test]
    fn p_symplectic_examples() {
        assert_eq!(count_p_symplectic(3, 1, 1, &[], 1 << 20), Ok(3));
        assert_eq!(count_p_symplectic(5, 2, 2, &[], 1 << 20), Ok(25));
        assert_eq!(count_p_symplectic(5, 1, 1, &[0], 1 << 20), Ok(4));
        assert_eq!(count_p_symplectic(5, 2, 3, &[1, 6], 1 << 20), Ok(20));
        assert_eq!(count_p_symplectic(7, 2, 3, &[1, 2], 1 << 20), Ok(35));
        assert!(count_p_symplectic(5, 1, 5, &[], 1 << 20).is_err());
        assert!(matches!(
            count_p_symplectic(13, 3, 1, &[], 1000),
            Err(BoundsError::WorkCapExceeded { .. })
        ));
    }

    #[test]
    fn larger_sieve_values() {
        let ones: BTreeMap<u64, f64> = [2, 3, 5, 7].iter().map(|&p| (p, 1.0)).collect();
        let got = larger_sieve_bound(10, 1.0, &ones).unwrap().unwrap();
        let l210 = libm::log(210.0);
        assert!((got - l210 / (l210 - core::f64::consts::LN_2)).abs() < 1e-12);
        assert_eq!(larger_sieve_bound(10, 1e3, &ones), Ok(None));
        let ident: BTreeMap<u64, f64> = [2, 3, 5, 7].iter().map(|&p| (p, p as f64)).collect();
        let got = larger_sieve_bound(10, 1.0, &ident).unwrap().unwrap();
        let den: f64 = [2.0f64, 3.0, 5.0, 7.0]
            .iter()
            .map(|p| libm::log(*p) / p)
            .sum::<f64>()
            - core::f64::consts::LN_2;
        assert!((got - l210 / den).abs() < 1e-12);
        let mut missing = ones.clone();
        missing.remove(&5);
        assert_eq!(
            larger_sieve_bound(10, 1.0, &missing),
            Err(BoundsError::MissingNu(5))
        );
    }

    #[test]
    fn value1_examples() {
        assert!(check_value1(Value1Input::new(3, 0, 2).unwrap()));
        assert!(!check_value1(Value1Input::new(1, 0, 2).unwrap()));
        assert!(Value1Input::new(0, 2, 2).is_err());
        for chi in -5..5 {
            for a in -10..10 {
                assert_eq!(curve_value1(chi, a), a != chi - 1);
            }
        }
        assert!(surface_value1(0, 7, 1, 0, 0));
        assert!(!surface_value1(0, 7, 1, 0, 1));
        assert!(threefold_value1(0, 0, 0, 0, 0));
        assert!(!threefold_value1(0, 0, 1, 1, 0));
        assert_eq!(
            threefold_value1(0, 0, 0, 0, 0),
            threefold_value1_assembled(0, 0, 0, 0, 0)
        );
    }

    #[test]
    fn value1_fails_only_inside_band() {
        for m1 in -100..=100 {
            for b_minus in -20..=20 {
                for b_plus in (b_minus + 1)..=20 {
                    let v = Value1Input {
                        m1,
                        b_minus,
                        b_plus,
                    };
                    let w = b_plus - b_minus;
                    let inside = b_minus < m1
                        && m1 < b_plus
                        && (m1 - b_minus).abs() < w
                        && (m1 - b_plus).abs() < w;
                    assert_eq!(check_value1(v), !inside);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn surface_forms_agree(b1 in 0i64..40, b2 in 0i64..40, b2c in 0i64..40, chi in -40i64..40, a in -100i64..100) {
            prop_assert_eq!(surface_value1(b1, b2, b2c, chi, a), surface_value1_assembled(b1, b2, b2c, chi, a));
        }

        #[test]
        fn threefold_forms_agree(b2 in 0i64..40, b0 in 0i64..40, b1 in 0i64..40, b2s in 0i64..40, a in -100i64..100) {
            prop_assert_eq!(threefold_value1(b2, b0, b1, b2s, a), threefold_value1_assembled(b2, b0, b1, b2s, a));
        }

        #[test]
        fn larger_sieve_monotone(
            nus in proptest::collection::vec(0.5f64..20.0, 8),
            idx in 0usize..8,
            shrink in 0.1f64..1.0,
            t in 1.0f64..3.0,
        ) {
            let primes = [2u64, 3, 5, 7, 11, 13, 17, 19];
            let nu: BTreeMap<u64, f64> = primes.iter().copied().zip(nus.iter().copied()).collect();
            let mut smaller = nu.clone();
            *smaller.get_mut(&primes[idx]).unwrap() *= shrink;
            let before = larger_sieve_bound(20, t, &nu).unwrap();
            let after = larger_sieve_bound(20, t, &smaller).unwrap();
            match (before, after) {
                (Some(b), Some(a)) => prop_assert!(a <= b * (1.0 + 1e-12)),
                (Some(_), None) => prop_assert!(false, "bound disappeared after shrinking nu"),
                _ => {}
            }
        }
    }
}
