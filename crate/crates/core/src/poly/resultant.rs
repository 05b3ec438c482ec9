//! Resultants through the Sylvester matrix, with the determinant taken by
//! fraction-free (Bareiss) elimination so every intermediate stays integral.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix (rows of equal length).
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// `Res(a, b)` for dense coefficient lists (lowest degree first, no
/// trailing zeros). The resultant with a zero polynomial is zero, and
/// with a non-zero constant `c` it is `c^deg(other)`.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        return num_traits::pow(a[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(b[0].clone(), m);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of a, then m shifted copies of b, highest degree first
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in a.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in b.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}
