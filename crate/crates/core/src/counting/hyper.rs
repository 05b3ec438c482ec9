use num_traits::Zero;

use super::{require_prime, CountConfig, CountError, PointCountRecord};
use crate::ff::{self, QuadraticChar};
use crate::poly::UniPoly;

/// `p ∤ 2 * lc(h) * disc(h)`, decided modulo `p`: the leading coefficient
/// survives and `h mod p` is squarefree.
pub fn hyperelliptic_good_reduction(h: &UniPoly, p: u64) -> bool {
    if p == 2 || ff::reduce_big(&h.leading_coeff(), p) == 0 {
        return false;
    }
    ff::dense::is_squarefree(&h.dense_mod(p), p)
}

/// Affine count and trace of `y^2 = h(x)` for `h` of odd degree `>= 3`.
///
/// The smooth model has a single point at infinity, so the projective
/// count is `n_affine + 1` and the trace is `p - n_affine`.
pub fn count_hyperelliptic(
    h: &UniPoly,
    p: u64,
    cfg: &CountConfig,
) -> Result<PointCountRecord, CountError> {
    match h.degree() {
        Some(d) if d >= 3 && d % 2 == 1 => {}
        _ => {
            return Err(CountError::UnsupportedModel(
                "hyperelliptic model needs odd degree >= 3",
            ))
        }
    }
    if p.is_multiple_of(2) {
        return Err(CountError::EvenPrime(p));
    }
    require_prime(p)?;
    super::check_work(p as u128, cfg)?;
    let chi = QuadraticChar::with_cap(p, cfg.table_cap)?;
    let hp = h.reduce_mod(p);
    let n = if hp.is_zero() {
        p * p
    } else {
        let s: i64 = (0..p).map(|x| chi.chi(hp.eval(x)) as i64).sum();
        (p as i64 + s) as u64
    };
    let good = hyperelliptic_good_reduction(h, p);
    debug_assert!(!h.leading_coeff().is_zero());
    Ok(PointCountRecord::new(p, n, Some(p as i64 - n as i64), good))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let cfg = CountConfig::default();
        let h = UniPoly::from_i64("x", &[0, 1, 0, 1]);
        let r = count_hyperelliptic(&h, 5, &cfg).unwrap();
        assert_eq!((r.n_affine, r.trace), (3, Some(2)));
        assert!(r.good_reduction);
        assert_eq!(r.n_affine + 1, (r.p as i64 + 1 - r.trace.unwrap()) as u64);
        assert!(count_hyperelliptic(&UniPoly::from_i64("x", &[1, 0, 0, 0, 1]), 5, &cfg).is_err());
        assert_eq!(
            count_hyperelliptic(&h, 2, &cfg),
            Err(CountError::EvenPrime(2))
        );
    }

    #[test]
    fn c17_at_103() {
        let mut c = alloc::vec![0i64; 18];
        c[0] = 1;
        c[17] = 1;
        let h = UniPoly::from_i64("x", &c);
        let r = count_hyperelliptic(&h, 103, &CountConfig::default()).unwrap();
        assert_eq!(r.n_affine, 87);
        assert!(r.good_reduction);
        assert!(
            !count_hyperelliptic(&h, 17, &CountConfig::default())
                .unwrap()
                .good_reduction
        );
    }
}
