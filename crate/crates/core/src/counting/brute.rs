use alloc::vec;
use alloc::vec::Vec;

use super::{check_work, pow_u128, require_prime, CountConfig, CountError, Variety};
use crate::poly::ModPoly;

/// Steps `point[idx[0..]]` through `[0, p)^k` like an odometer; returns
/// false once every combination has been visited.
pub(crate) fn advance(point: &mut [u64], idx: &[usize], p: u64) -> bool {
    for &i in idx {
        point[i] += 1;
        if point[i] < p {
            return true;
        }
        point[i] = 0;
    }
    false
}

/// Number of points of `V` in `[0, p)^n` satisfying all equations.
pub fn count_affine_bruteforce(v: &Variety, p: u64, cfg: &CountConfig) -> Result<u64, CountError> {
    let mut count = 0u64;
    for_each_point(v, p, cfg, |_| count += 1)?;
    Ok(count)
}

/// Visits every point of `V(F_p)` in odometer order.
pub(crate) fn for_each_point<F: FnMut(&[u64])>(
    v: &Variety,
    p: u64,
    cfg: &CountConfig,
    mut visit: F,
) -> Result<(), CountError> {
    require_prime(p)?;
    let n = v.vars.len();
    check_work(pow_u128(p, n), cfg)?;
    let eqs: Vec<ModPoly> = v.equations.iter().map(|e| e.reduce_mod(p)).collect();
    let all: Vec<usize> = (0..n).collect();
    let mut point = vec![0u64; n];
    loop {
        if eqs.iter().all(|e| e.eval(&point) == 0) {
            visit(&point);
        }
        if !advance(&mut point, &all, p) {
            return Ok(());
        }
    }
}
