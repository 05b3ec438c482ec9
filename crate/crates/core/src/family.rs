//! The one-parameter family `C_u : y^2 = f(t)(t - u)`.
//!
//! For an odd prime `p` of good reduction for `f`, the fiber at `u` is good
//! exactly when `f(u) ≢ 0 (mod p)`, and its trace is
//! `a(u) = -sum_t chi(f(t)) chi(t - u)`. [`compute_dp`] collects the `u`
//! whose trace is one of the excluded values `1 - a_i`; [`exceptional_count`]
//! keeps the integers `|u| <= T` that land in every `D_p`, which is what the
//! larger sieve bounds.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::{larger_sieve_bound, q_bound, BoundsError, SieveParams};
use crate::counting::{check_work, require_prime, CountConfig, CountError, Variety};
use crate::ff::{self, QuadraticChar};
use crate::poly::{PolyError, UniPoly};
use crate::primes::{PrimeError, PrimeIter};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("f must have even positive degree 2g, got degree {0:?}")]
    BadDegree(Option<usize>),
    #[error("f is not separable")]
    NotSeparable,
    #[error("p = {0} divides 2 * lc(f) * disc(f)")]
    BadPrime(u64),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `f` of degree `2g`, separable, and the excluded integers `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    f: UniPoly,
    g: u32,
    a_list: Vec<i64>,
    modulus: BigInt,
}

impl FamilySpec {
    pub fn new(f: UniPoly, a_list: Vec<i64>) -> Result<Self, FamilyError> {
        let g = match f.degree() {
            Some(d) if d >= 2 && d % 2 == 0 => (d / 2) as u32,
            d => return Err(FamilyError::BadDegree(d)),
        };
        let disc = f.discriminant()?;
        if disc.is_zero() {
            return Err(FamilyError::NotSeparable);
        }
        let modulus = BigInt::from(2) * f.leading_coeff() * disc;
        Ok(FamilySpec {
            f,
            g,
            a_list,
            modulus,
        })
    }

    /// Takes the `N`-side constants `alpha_i` and stores `a_i = 1 + alpha_i`.
    pub fn from_alphas(f: UniPoly, alphas: &[i64]) -> Result<Self, FamilyError> {
        Self::new(f, alphas.iter().map(|a| 1 + a).collect())
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn a_list(&self) -> &[i64] {
        &self.a_list
    }

    pub fn alphas(&self) -> Vec<i64> {
        self.a_list.iter().map(|a| a - 1).collect()
    }

    /// The trace values `1 - a_i` that put a fiber in `D_p`.
    pub fn excluded_traces(&self) -> Vec<i64> {
        self.a_list.iter().map(|a| 1 - a).collect()
    }

    /// `p ∤ 2 * lc(f) * disc(f)`.
    pub fn is_good_prime(&self, p: u64) -> bool {
        ff::reduce_big(&self.modulus, p) != 0
    }

    /// When this holds the Hasse-Weil window is shorter than `p`, so a trace
    /// is determined by its residue: `p - 2g sqrt(p) > max |1 - a_i|`.
    pub fn residue_determines_trace(&self, p: u64) -> bool {
        let m = self
            .excluded_traces()
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0) as u128;
        let p = p as u128;
        let g = self.g as u128;
        p > m && (p - m) * (p - m) > 4 * g * g * p
    }

    fn matches(&self, trace: i64, p: u64) -> bool {
        let exact = self.residue_determines_trace(p);
        self.excluded_traces().iter().any(|&c| {
            if exact {
                trace == c
            } else {
                (trace as i128 - c as i128).rem_euclid(p as i128) == 0
            }
        })
    }
}

/// `f(t)(t - u)`.
pub fn member_polynomial(spec: &FamilySpec, u: &BigInt) -> UniPoly {
    let var = spec.f.variable();
    spec.f
        .mul(&UniPoly::new(var, vec![-u.clone(), BigInt::from(1)]))
}

/// The fiber `y^2 - f(t)(t - u)`, with bad primes from `f(t)(t - u)`.
pub fn family_member(spec: &FamilySpec, u: &BigInt) -> Result<Variety, FamilyError> {
    let h = member_polynomial(spec, u);
    let vars = vec![String::from(spec.f.variable()), String::from("y")];
    let y2 = crate::poly::IntPoly::var(&vars, 1).checked_pow(2)?;
    let eq = &y2 - &h.to_intpoly_in(&vars)?;
    Ok(Variety::new(vars, vec![eq])?.with_discriminant_generator(h)?)
}

/// `D_p` and the number of singular fibers at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DpRecord {
    pub p: u64,
    pub members: Vec<u64>,
    pub size: u64,
    pub skipped_bad_u: u64,
}

/// `trace(u)` for every `u in [0, p)`, `None` where the fiber is singular.
pub fn fiber_traces(
    spec: &FamilySpec,
    p: u64,
    cfg: &CountConfig,
) -> Result<Vec<Option<i64>>, FamilyError> {
    if p == 2 || !spec.is_good_prime(p) {
        return Err(FamilyError::BadPrime(p));
    }
    require_prime(p)?;
    check_work((p as u128) * (p as u128), cfg)?;
    let chi = QuadraticChar::with_cap(p, cfg.table_cap).map_err(CountError::from)?;
    let fp = spec.f.reduce_mod(p);
    let chi_f: Vec<i8> = (0..p).map(|t| chi.chi(fp.eval(t))).collect();
    let chi_lin: Vec<i8> = (0..p).map(|k| chi.chi(k)).collect();
    let traces = (0..p)
        .map(|u| {
            if chi_f[u as usize] == 0 {
                return None;
            }
            let mut s = 0i64;
            for t in 0..p {
                let k = if t >= u { t - u } else { t + p - u };
                s += (chi_f[t as usize] * chi_lin[k as usize]) as i64;
            }
            Some(-s)
        })
        .collect();
    Ok(traces)
}

/// The per-prime step: `D_p` for one good odd prime.
pub fn compute_dp(spec: &FamilySpec, p: u64, cfg: &CountConfig) -> Result<DpRecord, FamilyError> {
    let traces = fiber_traces(spec, p, cfg)?;
    let mut members = Vec::new();
    let mut skipped = 0;
    for (u, t) in traces.iter().enumerate() {
        match t {
            None => skipped += 1,
            Some(t) => {
                debug_assert!((*t as i128).pow(2) <= 4 * (spec.g as i128).pow(2) * p as i128);
                if spec.matches(*t, p) {
                    members.push(u as u64);
                }
            }
        }
    }
    Ok(DpRecord {
        p,
        size: members.len() as u64,
        members,
        skipped_bad_u: skipped,
    })
}

/// Good odd primes `<= bound` for the family.
pub fn family_primes(spec: &FamilySpec, bound: u64) -> Result<Vec<u64>, FamilyError> {
    if bound < 3 {
        return Ok(Vec::new());
    }
    Ok(PrimeIter::new(3, bound)?
        .filter(|&p| spec.is_good_prime(p))
        .collect())
}

/// `S(T, Q)` and the surviving parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExceptionalCount {
    pub count: u64,
    pub witnesses: Vec<i64>,
}

/// The combine step: `u in [-T, T]` with `u mod p in D_p` for every record.
pub fn combine_exceptional(t: u64, records: &[DpRecord]) -> ExceptionalCount {
    let masks: Vec<(u64, Vec<bool>)> = records
        .iter()
        .map(|r| {
            let mut m = vec![false; r.p as usize];
            for &u in &r.members {
                m[u as usize] = true;
            }
            (r.p, m)
        })
        .collect();
    let t = t as i64;
    let witnesses: Vec<i64> = (-t..=t)
        .filter(|&u| {
            masks
                .iter()
                .all(|(p, m)| m[(u as i128).rem_euclid(*p as i128) as usize])
        })
        .collect();
    ExceptionalCount {
        count: witnesses.len() as u64,
        witnesses,
    }
}

/// `S(T, Q)` over the good odd primes `p < Q`.
pub fn exceptional_count(
    spec: &FamilySpec,
    t: u64,
    q: u64,
    cfg: &CountConfig,
) -> Result<ExceptionalCount, FamilyError> {
    let records = family_primes(spec, q.saturating_sub(1))?
        .into_iter()
        .map(|p| compute_dp(spec, p, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine_exceptional(t, &records))
}

/// Empirical sieve data against the theorem's `Q_g(T)` and its ceiling.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SieveReport {
    pub f: String,
    pub g: u32,
    pub alpha: Vec<i64>,
    pub a: Vec<i64>,
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    pub t: u64,
    #[cfg_attr(feature = "serde", serde(rename = "K"))]
    pub k: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Q"))]
    pub q: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Q_used"))]
    pub q_used: u64,
    #[cfg_attr(feature = "serde", serde(rename = "S_empirical"))]
    pub s_empirical: u64,
    pub witnesses: Vec<i64>,
    pub larger_sieve_bound: Option<f64>,
    pub theorem_ceiling: f64,
    pub within_larger_sieve: Option<bool>,
    pub within_ceiling: bool,
}

/// `Q_g(T) / log T`, the theorem's bound on the exceptional set with the
/// implicit constant set to 1.
pub fn theorem_ceiling(params: &SieveParams) -> Result<f64, BoundsError> {
    Ok(q_bound(params)? / libm::log(params.t))
}

/// The sieve primes `p <= Q_used` with `Q_used = min(floor(Q_g(T)), q_cap)`.
pub fn sieve_plan(
    spec: &FamilySpec,
    t: u64,
    k: f64,
    q_cap: u64,
) -> Result<(SieveParams, f64, u64), FamilyError> {
    let n = spec.a_list.len().max(1) as u32;
    let params = SieveParams::new(spec.g, n, k, t as f64)?;
    let q = q_bound(&params)?;
    let q_used = if q >= q_cap as f64 { q_cap } else { q as u64 };
    Ok((params, q, q_used))
}

/// Assembles the report from the `D_p` of every good odd `p <= q_used`.
/// Bad primes carry no restriction and enter the sieve with `nu(p) = p`.
pub fn assemble_sieve_report(
    spec: &FamilySpec,
    t: u64,
    params: &SieveParams,
    q: f64,
    q_used: u64,
    records: &[DpRecord],
) -> Result<SieveReport, FamilyError> {
    let exc = combine_exceptional(t, records);
    let mut nu: BTreeMap<u64, f64> = BTreeMap::new();
    if q_used >= 2 {
        for p in PrimeIter::new(2, q_used)? {
            nu.insert(p, p as f64);
        }
    }
    let mut empty_fiber = false;
    for r in records {
        empty_fiber |= r.size == 0;
        nu.insert(r.p, r.size as f64);
    }
    let bound = if empty_fiber {
        Some(0.0)
    } else {
        larger_sieve_bound(q_used, t as f64, &nu)?
    };
    let ceiling = theorem_ceiling(params)?;
    Ok(SieveReport {
        f: format!("{}", spec.f),
        g: spec.g,
        alpha: spec.alphas(),
        a: spec.a_list.clone(),
        t,
        k: params.k,
        q,
        q_used,
        s_empirical: exc.count,
        witnesses: exc.witnesses,
        larger_sieve_bound: bound,
        theorem_ceiling: ceiling,
        within_larger_sieve: bound.map(|b| exc.count as f64 <= b),
        within_ceiling: (exc.count as f64) <= ceiling,
    })
}

/// Runs the sieve experiment sequentially.
pub fn sieve_experiment(
    spec: &FamilySpec,
    t: u64,
    k: f64,
    q_cap: u64,
    cfg: &CountConfig,
) -> Result<SieveReport, FamilyError> {
    let (params, q, q_used) = sieve_plan(spec, t, k, q_cap)?;
    let records = family_primes(spec, q_used)?
        .into_iter()
        .map(|p| compute_dp(spec, p, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    assemble_sieve_report(spec, t, &params, q, q_used, &records)
}
