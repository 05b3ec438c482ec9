//! Exact integer polynomials.
//!
//! [`IntPoly`] is a sparse multivariate polynomial over the integers with a
//! fixed, ordered list of variable names. Terms are kept in graded
//! lexicographic order and zero coefficients are never stored, so
//! structural equality is polynomial equality. [`UniPoly`] is the dense
//! univariate counterpart used for discriminants and hyperelliptic models.

mod parse;
mod resultant;

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ff::{self, add_mod, mul_mod, pow_mod};

pub use parse::{parse_poly, ParseError};
pub use resultant::{bareiss_determinant, resultant};

/// Largest exponent accepted anywhere in a polynomial.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial must have degree at least 1")]
    DegreeZero,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("exponent exceeds 2^31 - 1")]
    ExponentOverflow,
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).filter(|&e| e <= MAX_EXPONENT))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: &[String]) -> Self {
        IntPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    /// The polynomial consisting of variable number `index`.
    pub fn var(vars: &[String], index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_default()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.contains_var(i))
            .collect()
    }

    /// Splits by powers of one variable: `self = sum_k coeff[k] * var^k`,
    /// where each coefficient no longer contains `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, IntPoly> {
        let mut out: BTreeMap<u32, IntPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[var];
            let mut e = m.0.clone();
            e[var] = 0;
            out.entry(k)
                .or_insert_with(|| IntPoly::zero(&self.vars))
                .add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn checked_mul(&self, other: &IntPoly) -> Result<IntPoly, PolyError> {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = IntPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, mut exp: u32) -> Result<IntPoly, PolyError> {
        if exp > MAX_EXPONENT {
            return Err(PolyError::ExponentOverflow);
        }
        // a single term raises without expansion
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let e =
                m.0.iter()
                    .map(|&a| {
                        (a as u64)
                            .checked_mul(exp as u64)
                            .filter(|&v| v <= MAX_EXPONENT as u64)
                            .map(|v| v as u32)
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or(PolyError::ExponentOverflow)?;
            let mut out = IntPoly::zero(&self.vars);
            out.add_term(Monomial(e), num_traits::pow(c.clone(), exp as usize));
            return Ok(out);
        }
        let mut acc = IntPoly::constant(&self.vars, 1);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Value at `point` reduced into `[0, p)`.
    pub fn eval_mod_p(&self, point: &[u64], p: u64) -> Result<u64, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        Ok(self.reduce_mod(p).eval(point))
    }

    /// Reduction modulo `p`, ready for repeated evaluation.
    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        let nvars = self.vars.len();
        let mut coeffs = Vec::with_capacity(self.terms.len());
        let mut exps = Vec::with_capacity(self.terms.len() * nvars);
        for (m, c) in &self.terms {
            let r = ff::reduce_big(c, p);
            if r != 0 {
                coeffs.push(r);
                exps.extend_from_slice(&m.0);
            }
        }
        ModPoly {
            p,
            nvars,
            coeffs,
            exps,
        }
    }

    /// Substitutes `value` for `var` and removes it from the variable list.
    pub fn specialize(&self, var: &str, value: &BigInt) -> Result<IntPoly, PolyError> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut out = IntPoly::zero(&vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(idx);
            out.add_term(Monomial(e), c * num_traits::pow(value.clone(), k as usize));
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger variable list containing
    /// every variable of `self`.
    pub fn embed(&self, vars: &[String]) -> Result<IntPoly, PolyError> {
        let map = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = IntPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i]] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Dense univariate view when only variable `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly, PolyError> {
        let mut coeffs = vec![BigInt::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(PolyError::NotUnivariate(self.vars[var].clone()));
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(&self.vars[var], coeffs))
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.vars.iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    /// Terms from highest to lowest in graded-lex order, e.g.
    /// `-x^3 + y^2 - x`. The output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                self.write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    /// Panics if an exponent overflows; use [`IntPoly::checked_mul`] for
    /// untrusted input.
    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

/// An [`IntPoly`] reduced modulo a prime, flattened for evaluation.
#[derive(Debug, Clone)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    coeffs: Vec<u64>,
    exps: Vec<u32>,
}

impl ModPoly {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `point` coordinates must already lie in `[0, p)`.
    #[inline]
    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (c, e) in self
            .coeffs
            .iter()
            .zip(self.exps.chunks_exact(self.nvars.max(1)))
        {
            let mut t = *c;
            for (&x, &k) in point.iter().zip(e) {
                match k {
                    0 => {}
                    1 => t = mul_mod(t, x, p),
                    2 => t = mul_mod(t, mul_mod(x, x, p), p),
                    _ => t = mul_mod(t, pow_mod(x, k as u64, p), p),
                }
            }
            acc = add_mod(acc, t, p);
        }
        acc
    }
}

/// Dense univariate integer polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn from_i64(var: &str, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses a univariate expression in `var`.
    pub fn parse(text: &str, var: &str) -> Result<Self, ParseError> {
        let vars = [var.to_string()];
        let p = parse_poly(text, &vars)?;
        Ok(p.to_univariate(0).expect("single declared variable"))
    }

    pub fn variable(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        UniPoly::new(&self.var, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(&self.var, Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(&self.var, out)
    }

    /// Discriminant, computed as `(-1)^(d(d-1)/2) Res(h, h') / lc(h)`.
    pub fn discriminant(&self) -> Result<BigInt, PolyError> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(PolyError::DegreeZero),
        };
        let res = resultant(&self.coeffs, &self.derivative().coeffs);
        let lc = self.leading_coeff();
        debug_assert!((&res % &lc).is_zero());
        let q = res / lc;
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }

    pub fn reduce_mod(&self, p: u64) -> ModUniPoly {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter_map(|(i, c)| {
                let r = ff::reduce_big(c, p);
                (r != 0).then_some((i as u64, r))
            })
            .collect();
        ModUniPoly { p, terms }
    }

    /// Coefficients reduced into `[0, p)`, lowest degree first, trimmed.
    pub fn dense_mod(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| ff::reduce_big(c, p)).collect();
        ff::dense::trim(&mut v);
        v
    }

    pub fn to_intpoly(&self) -> IntPoly {
        let vars = [self.var.clone()];
        IntPoly::from_terms(
            &vars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    /// As a polynomial over `vars`, which must contain this variable.
    pub fn to_intpoly_in(&self, vars: &[String]) -> Result<IntPoly, PolyError> {
        self.to_intpoly().embed(vars)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_intpoly(), f)
    }
}

/// Sparse reduction of a [`UniPoly`] modulo `p`, highest exponent first.
#[derive(Debug, Clone)]
pub struct ModUniPoly {
    p: u64,
    terms: Vec<(u64, u64)>,
}

impl ModUniPoly {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the reduction, `None` when it vanishes.
    pub fn degree(&self) -> Option<u64> {
        self.terms.first().map(|t| t.0)
    }

    /// Horner's rule over the gaps between non-zero exponents, so that
    /// `x^457 + 1` costs one modular power rather than 457 steps.
    #[inline]
    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut it = self.terms.iter();
        let Some(&(mut e_prev, c0)) = it.next() else {
            return 0;
        };
        let mut acc = c0;
        for &(e, c) in it {
            acc = mul_mod(acc, pow_gap(x, e_prev - e, p), p);
            acc = add_mod(acc, c, p);
            e_prev = e;
        }
        mul_mod(acc, pow_gap(x, e_prev, p), p)
    }
}

#[inline]
fn pow_gap(x: u64, k: u64, p: u64) -> u64 {
    match k {
        0 => 1,
        1 => x,
        _ => pow_mod(x, k, p),
    }
}
