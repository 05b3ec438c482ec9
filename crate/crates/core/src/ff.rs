//! Scalar kernels modulo a prime: modular arithmetic, the Legendre symbol
//! and precomputed square tables.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

/// Largest prime for which [`SquareTable::build`] allocates a table.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("square table for p = {p} exceeds the cap {cap}")]
    TableTooLarge { p: u64, cap: u64 },
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat. `a` must be non-zero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Reduce a signed machine integer into `[0, p)`.
#[inline]
pub fn reduce_i64(a: i64, p: u64) -> u64 {
    (a as i128).rem_euclid(p as i128) as u64
}

/// Reduce a big integer into `[0, p)`.
pub fn reduce_big(a: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = a.mod_floor(&m);
    debug_assert!(!r.is_negative());
    r.to_u64().expect("residue fits in u64")
}

fn check_odd(p: u64) -> Result<(), FieldError> {
    if p < 3 || p.is_multiple_of(2) {
        Err(FieldError::NotOddPrime(p))
    } else {
        Ok(())
    }
}

/// Legendre symbol of an already reduced residue, by Euler's criterion.
#[inline]
pub fn legendre_residue(a: u64, p: u64) -> i8 {
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
///
/// Primality of `p` is not checked; only parity and size are.
pub fn legendre(a: i64, p: u64) -> Result<i8, FieldError> {
    check_odd(p)?;
    Ok(legendre_residue(reduce_i64(a, p), p))
}

/// `chi[a]` is the Legendre symbol of `a` modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTable {
    p: u64,
    chi: Vec<i8>,
}

impl SquareTable {
    pub fn build(p: u64) -> Result<Self, FieldError> {
        Self::build_with_cap(p, DEFAULT_TABLE_CAP)
    }

    /// Marks the `(p - 1) / 2` non-zero squares in `O(p)`.
    pub fn build_with_cap(p: u64, cap: u64) -> Result<Self, FieldError> {
        check_odd(p)?;
        if p > cap {
            return Err(FieldError::TableTooLarge { p, cap });
        }
        let n = p as usize;
        let mut chi = vec![-1i8; n];
        chi[0] = 0;
        // (y + 1)^2 = y^2 + 2y + 1
        let mut sq = 0u64;
        for y in 0..(p - 1) / 2 {
            sq = add_mod(sq, add_mod(2 * y % p, 1, p), p);
            chi[sq as usize] = 1;
        }
        Ok(SquareTable { p, chi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.chi
    }

    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        self.chi[a as usize]
    }
}

/// The quadratic character modulo one odd prime, backed by a table
/// when the prime is below the cap and by Euler's criterion otherwise.
#[derive(Debug, Clone)]
pub enum QuadraticChar {
    Table(SquareTable),
    Scalar(u64),
}

impl QuadraticChar {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        Self::with_cap(p, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(p: u64, cap: u64) -> Result<Self, FieldError> {
        check_odd(p)?;
        if p <= cap {
            SquareTable::build_with_cap(p, cap).map(QuadraticChar::Table)
        } else {
            Ok(QuadraticChar::Scalar(p))
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            QuadraticChar::Table(t) => t.p,
            QuadraticChar::Scalar(p) => *p,
        }
    }

    /// `a` must already be reduced modulo `p`.
    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        match self {
            QuadraticChar::Table(t) => t.chi(a),
            QuadraticChar::Scalar(p) => legendre_residue(a, *p),
        }
    }
}

/// Dense polynomials over `F_p`, lowest degree first, used for
/// squarefreeness tests. Trailing zeros are trimmed.
pub mod dense {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut d: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        trim(&mut d);
        d
    }

    /// Remainder of `a` modulo the non-zero polynomial `b`.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv_lead = inv_mod(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let q = mul_mod(r[dr], inv_lead, p);
            let shift = dr - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(q, bc, p), p);
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd; the zero polynomial is returned as an empty vector.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = inv_mod(lead, p);
            for c in x.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
        x
    }

    /// True when `gcd(a, a') = 1`. Non-zero constants count as squarefree.
    pub fn is_squarefree(a: &[u64], p: u64) -> bool {
        let mut a = a.to_vec();
        trim(&mut a);
        if a.len() <= 1 {
            return !a.is_empty();
        }
        let d = derivative(&a, p);
        if d.is_empty() {
            return false;
        }
        gcd(&a, &d, p).len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(4, 5), Ok(1));
        assert_eq!(legendre(0, 7), Ok(0));
        assert_eq!(legendre(3, 7), Ok(-1));
        assert_eq!(legendre(-1, 5), Ok(1));
        assert_eq!(legendre(3, 2), Err(FieldError::NotOddPrime(2)));
        assert_eq!(legendre(3, 1), Err(FieldError::NotOddPrime(1)));
    }

    #[test]
    fn table_examples() {
        assert_eq!(SquareTable::build(3).unwrap().as_slice(), &[0, 1, -1]);
        assert_eq!(
            SquareTable::build(5).unwrap().as_slice(),
            &[0, 1, -1, -1, 1]
        );
        assert_eq!(
            SquareTable::build_with_cap(101, 100),
            Err(FieldError::TableTooLarge { p: 101, cap: 100 })
        );
        for p in [3u64, 5, 7, 11, 101, 9973] {
            let t = SquareTable::build(p).unwrap();
            assert_eq!(t.as_slice().iter().map(|&c| c as i64).sum::<i64>(), 0);
            assert_eq!(
                t.as_slice().iter().filter(|&&c| c == 1).count() as u64,
                (p - 1) / 2
            );
        }
    }

    #[test]
    fn scalar_fallback_agrees() {
        let big = QuadraticChar::with_cap(10007, 100).unwrap();
        let table = QuadraticChar::new(10007).unwrap();
        assert!(matches!(big, QuadraticChar::Scalar(_)));
        for a in 0..10007 {
            assert_eq!(big.chi(a), table.chi(a));
        }
    }

    #[test]
    fn mulmod_wide_modulus() {
        let m = (1u64 << 61) - 1;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
        assert_eq!(pow_mod(3, m - 1, m), 1);
    }

    #[test]
    fn squarefree_mod_p() {
        // (x - 1)^2 = x^2 - 2x + 1
        assert!(!dense::is_squarefree(&[1, 5, 1], 7));
        assert!(dense::is_squarefree(&[1, 0, 1], 7));
        // x^5 + x over F_5: derivative is 1
        assert!(dense::is_squarefree(&[0, 1, 0, 0, 0, 1], 5));
        // x^5 over F_5: derivative vanishes
        assert!(!dense::is_squarefree(&[0, 0, 0, 0, 0, 1], 5));
    }
}
