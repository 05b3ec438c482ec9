use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::brute::{advance, for_each_point};
use super::{check_work, pow_u128, require_prime, CountConfig, CountError, Variety};
use crate::ff::{add_mod, mul_mod};
use crate::poly::{IntPoly, PolyError};
use crate::sum::Compensated;

/// `psi(k) = exp(2 pi i k / p)` for every residue `k`.
fn additive_character(p: u64) -> Vec<Complex64> {
    let step = 2.0 * core::f64::consts::PI / p as f64;
    (0..p)
        .map(|k| {
            let t = step * k as f64;
            Complex64::new(libm::cos(t), libm::sin(t))
        })
        .collect()
}

/// Sums `counts[k] * psi(k)` in residue order.
fn weighted_sum(counts: &[u64], psi: &[Complex64]) -> Complex64 {
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for (c, z) in counts.iter().zip(psi) {
        if *c != 0 {
            re.add(*c as f64 * z.re);
            im.add(*c as f64 * z.im);
        }
    }
    Complex64::new(re.value(), im.value())
}

fn linear_phase(x: &[u64], h: &[u64], p: u64) -> u64 {
    x.iter()
        .zip(h)
        .fold(0, |acc, (&xi, &hi)| add_mod(acc, mul_mod(xi, hi % p, p), p))
}

/// `sum_{x in V(F_p)} psi(f(x) + h . x)`.
pub fn exp_sum(
    v: &Variety,
    f: &IntPoly,
    h: &[u64],
    p: u64,
    cfg: &CountConfig,
) -> Result<Complex64, CountError> {
    let n = v.dimension_of_ambient();
    if h.len() != n {
        return Err(PolyError::DimensionMismatch {
            expected: n,
            got: h.len(),
        }
        .into());
    }
    let f = f.embed(v.variables())?.reduce_mod(p.max(2));
    let mut counts = vec![0u64; p as usize];
    for_each_point(v, p, cfg, |x| {
        let k = add_mod(f.eval(x), linear_phase(x, h, p), p);
        counts[k as usize] += 1;
    })?;
    Ok(weighted_sum(&counts, &additive_character(p)))
}

/// `(sum_h |S(0, h)|^2, p^n * N)`; the two agree exactly in exact arithmetic.
pub fn parseval_check(v: &Variety, p: u64, cfg: &CountConfig) -> Result<(f64, f64), CountError> {
    require_prime(p)?;
    let n = v.dimension_of_ambient();
    check_work(pow_u128(p, 2 * n), cfg)?;
    let mut points: Vec<Vec<u64>> = Vec::new();
    for_each_point(v, p, cfg, |x| points.push(x.to_vec()))?;
    let psi = additive_character(p);
    let all: Vec<usize> = (0..n).collect();
    let mut h = vec![0u64; n];
    let mut counts = vec![0u64; p as usize];
    let mut lhs = Compensated::default();
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in &points {
            counts[linear_phase(x, &h, p) as usize] += 1;
        }
        lhs.add(weighted_sum(&counts, &psi).norm_sqr());
        if !advance(&mut h, &all, p) {
            break;
        }
    }
    let rhs = pow_u128(p, n) as f64 * points.len() as f64;
    Ok((lhs.value(), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: Complex64, re: f64, im: f64) -> bool {
        (z.re - re).abs() < 1e-9 && (z.im - im).abs() < 1e-9
    }

    #[test]
    fn trivial_sums() {
        let cfg = CountConfig::default();
        let line = Variety::affine_space(&["x"]);
        let zero = IntPoly::zero(line.variables());
        assert!(close(
            exp_sum(&line, &zero, &[1], 7, &cfg).unwrap(),
            0.0,
            0.0
        ));
        assert!(close(
            exp_sum(&line, &zero, &[0], 7, &cfg).unwrap(),
            7.0,
            0.0
        ));
        let point = Variety::from_strs(&["x"], &["x"]).unwrap();
        let f = crate::poly::parse_poly("x^2 + 3*x", point.variables()).unwrap();
        assert!(close(
            exp_sum(&point, &f, &[4], 11, &cfg).unwrap(),
            1.0,
            0.0
        ));
        assert!(exp_sum(&line, &zero, &[1, 2], 7, &cfg).is_err());
    }

    #[test]
    fn parseval_examples() {
        let cfg = CountConfig::default();
        let cases: [(&[&str], &[&str], f64); 3] = [
            (&["x"], &["x"], 5.0),
            (&["x"], &[], 25.0),
            (&["x", "y"], &["y^2 - x^3 - x"], 75.0),
        ];
        for (vars, eqs, want) in cases {
            let v = Variety::from_strs(vars, eqs).unwrap();
            let (lhs, rhs) = parseval_check(&v, 5, &cfg).unwrap();
            assert!((lhs - want).abs() < 1e-9, "{lhs}");
            assert_eq!(rhs, want);
        }
    }
}
