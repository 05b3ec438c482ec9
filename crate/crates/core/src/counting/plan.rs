//! Character-sum planner.
//!
//! A variable `y` is eliminable when it occurs in exactly one equation and
//! that equation has the shape `c*y^2 + rest` with `c` a non-zero integer
//! and `rest` free of `y`. Over `F_p` with `p` odd and `p ∤ c` the number
//! of `y` solving it is `1 + chi(-c * rest)`; when `p | c` it is `p` if
//! `rest ≡ 0` and `0` otherwise.
//!
//! The variables occurring in the eliminated `rest` terms form the base.
//! The count becomes a sum over base points of the product of the local
//! factors, times the number of solutions of each remaining group of
//! equations in the non-base variables they share (counted by
//! enumeration), times `p` for each variable that occurs nowhere.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::brute::advance;
use super::{check_work, pow_u128, require_prime, CountConfig, CountError, Variety};
use crate::ff::{self, mul_mod, sub_mod, QuadraticChar};
use crate::poly::{IntPoly, ModPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Elimination {
    var: usize,
    equation: usize,
    square_coeff: BigInt,
    rest: IntPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Component {
    vars: Vec<usize>,
    equations: Vec<usize>,
}

/// How a variety's count decomposes into character sums and fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSumPlan {
    nvars: usize,
    eliminations: Vec<Elimination>,
    base: Vec<usize>,
    base_constraints: Vec<usize>,
    components: Vec<Component>,
    free: Vec<usize>,
}

fn eliminable(eq: &IntPoly, var: usize) -> Option<(BigInt, IntPoly)> {
    let mut parts = eq.coefficients_in(var);
    if parts.keys().any(|&k| k != 0 && k != 2) {
        return None;
    }
    let c = parts.get(&2)?.as_constant()?;
    let rest = parts
        .remove(&0)
        .unwrap_or_else(|| IntPoly::zero(eq.variables()));
    Some((c, rest))
}

impl CharSumPlan {
    /// `None` when no variable can be eliminated.
    pub fn new(v: &Variety) -> Option<Self> {
        let n = v.vars.len();
        let occurrences: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..v.equations.len())
                    .filter(|&e| v.equations[e].contains_var(x))
                    .collect()
            })
            .collect();

        let mut eliminations = Vec::new();
        let mut consumed = vec![false; v.equations.len()];
        for (e, eq) in v.equations.iter().enumerate() {
            for (x, occ) in occurrences.iter().enumerate() {
                if occ.as_slice() != [e] {
                    continue;
                }
                if let Some((c, rest)) = eliminable(eq, x) {
                    eliminations.push(Elimination {
                        var: x,
                        equation: e,
                        square_coeff: c,
                        rest,
                    });
                    consumed[e] = true;
                    break;
                }
            }
        }
        if eliminations.is_empty() {
            return None;
        }

        let eliminated: Vec<bool> = (0..n)
            .map(|x| eliminations.iter().any(|el| el.var == x))
            .collect();
        let mut in_base = vec![false; n];
        for el in &eliminations {
            for x in el.rest.support() {
                in_base[x] = true;
            }
        }
        let base: Vec<usize> = (0..n).filter(|&x| in_base[x]).collect();

        // union-find over the non-base, non-eliminated variables
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let open = |x: usize| !in_base[x] && !eliminated[x];
        let mut base_constraints = Vec::new();
        let mut touched = vec![false; n];
        for (e, eq) in v.equations.iter().enumerate() {
            if consumed[e] {
                continue;
            }
            let local: Vec<usize> = eq.support().into_iter().filter(|&x| open(x)).collect();
            match local.split_first() {
                None => base_constraints.push(e),
                Some((&first, others)) => {
                    touched[first] = true;
                    for &x in others {
                        touched[x] = true;
                        let (a, b) = (find(&mut parent, first), find(&mut parent, x));
                        parent[a] = b;
                    }
                }
            }
        }

        let mut components: Vec<Component> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for x in (0..n).filter(|&x| open(x) && touched[x]) {
            let r = find(&mut parent, x);
            if root_of[r] == usize::MAX {
                root_of[r] = components.len();
                components.push(Component {
                    vars: Vec::new(),
                    equations: Vec::new(),
                });
            }
            components[root_of[r]].vars.push(x);
        }
        for (e, eq) in v.equations.iter().enumerate() {
            if consumed[e] || base_constraints.contains(&e) {
                continue;
            }
            let x = eq.support().into_iter().find(|&x| open(x)).unwrap();
            let r = find(&mut parent, x);
            components[root_of[r]].equations.push(e);
        }
        let free = (0..n).filter(|&x| open(x) && !touched[x]).collect();

        Some(CharSumPlan {
            nvars: n,
            eliminations,
            base,
            base_constraints,
            components,
            free,
        })
    }

    pub fn eliminated_vars(&self) -> Vec<usize> {
        self.eliminations.iter().map(|e| e.var).collect()
    }

    pub fn base_vars(&self) -> &[usize] {
        &self.base
    }

    /// Variable groups counted by enumeration inside each base fiber.
    pub fn fiber_groups(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.vars.clone()).collect()
    }

    pub fn free_vars(&self) -> &[usize] {
        &self.free
    }

    /// Polynomial evaluations needed at `p`.
    pub fn work(&self, p: u64) -> u128 {
        let fibers: u128 = self
            .components
            .iter()
            .map(|c| pow_u128(p, c.vars.len()))
            .fold(1u128, |a, b| a.saturating_add(b));
        pow_u128(p, self.base.len()).saturating_mul(fibers)
    }

    /// Exact `|V(F_p)|` for an odd prime `p`.
    pub fn count(&self, v: &Variety, p: u64, cfg: &CountConfig) -> Result<u64, CountError> {
        if p.is_multiple_of(2) {
            return Err(CountError::EvenPrime(p));
        }
        require_prime(p)?;
        check_work(self.work(p), cfg)?;
        let chi = QuadraticChar::with_cap(p, cfg.table_cap)?;

        let elims: Vec<(u64, ModPoly)> = self
            .eliminations
            .iter()
            .map(|el| (ff::reduce_big(&el.square_coeff, p), el.rest.reduce_mod(p)))
            .collect();
        let constraints: Vec<ModPoly> = self
            .base_constraints
            .iter()
            .map(|&e| v.equations[e].reduce_mod(p))
            .collect();
        let fibers: Vec<(Vec<usize>, Vec<ModPoly>)> = self
            .components
            .iter()
            .map(|c| {
                let eqs = c
                    .equations
                    .iter()
                    .map(|&e| v.equations[e].reduce_mod(p))
                    .collect();
                (c.vars.clone(), eqs)
            })
            .collect();

        let mut point = vec![0u64; self.nvars];
        let mut total: u128 = 0;
        loop {
            if constraints.iter().all(|c| c.eval(&point) == 0) {
                let mut weight: u128 = 1;
                for (c, rest) in &elims {
                    let r = rest.eval(&point);
                    let local = if *c == 0 {
                        if r == 0 {
                            p
                        } else {
                            0
                        }
                    } else {
                        // y^2 = -rest/c has 1 + chi(-rest * c) roots
                        let target = mul_mod(sub_mod(0, r, p), *c, p);
                        (1 + chi.chi(target) as i64) as u64
                    };
                    weight *= local as u128;
                    if weight == 0 {
                        break;
                    }
                }
                if weight != 0 {
                    for (vars, eqs) in &fibers {
                        weight *= fiber_count(&mut point, vars, eqs, p) as u128;
                        if weight == 0 {
                            break;
                        }
                    }
                }
                total += weight;
            }
            if !advance(&mut point, &self.base, p) {
                break;
            }
        }
        let total = total.saturating_mul(pow_u128(p, self.free.len()));
        u64::try_from(total).map_err(|_| CountError::CountOverflow)
    }
}

fn fiber_count(point: &mut [u64], vars: &[usize], eqs: &[ModPoly], p: u64) -> u64 {
    let mut n = 0;
    loop {
        if eqs.iter().all(|e| e.eval(point) == 0) {
            n += 1;
        }
        if !advance(point, vars, p) {
            return n;
        }
    }
}

/// `|V(F_p)|` through the character-sum planner.
pub fn count_affine_charsum(v: &Variety, p: u64, cfg: &CountConfig) -> Result<u64, CountError> {
    if p.is_multiple_of(2) {
        return Err(CountError::EvenPrime(p));
    }
    let plan = CharSumPlan::new(v).ok_or(CountError::NoEliminableStructure)?;
    plan.count(v, p, cfg)
}

#[cfg(test)]
mod tests {
    use super::super::count_affine_bruteforce;
    use super::*;

    fn cfg() -> CountConfig {
        CountConfig::default()
    }

    #[test]
    fn elliptic_curve_at_five() {
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^3 - x"]).unwrap();
        let plan = CharSumPlan::new(&v).unwrap();
        assert_eq!(plan.eliminated_vars(), [1]);
        assert_eq!(plan.base_vars(), &[0]);
        assert_eq!(count_affine_charsum(&v, 5, &cfg()), Ok(3));
    }

    #[test]
    fn bijective_power_map() {
        // gcd(5, p - 1) = 1 for p = 3, 7, 13: x -> x^5 + 1 is a bijection
        let v = Variety::from_strs(&["x", "y"], &["y^2 - x^5 - 1"]).unwrap();
        for p in [3, 7, 13, 17] {
            assert_eq!(count_affine_charsum(&v, p, &cfg()), Ok(p));
        }
    }

    #[test]
    fn no_structure_and_even_prime() {
        let v = Variety::from_strs(&["x", "y"], &["x*y - 1"]).unwrap();
        assert_eq!(
            count_affine_charsum(&v, 5, &cfg()),
            Err(CountError::NoEliminableStructure)
        );
        let w = Variety::from_strs(&["x", "y"], &["y^2 - x"]).unwrap();
        assert_eq!(
            count_affine_charsum(&w, 2, &cfg()),
            Err(CountError::EvenPrime(2))
        );
    }

    #[test]
    fn fibers_constraints_and_free_variables() {
        let v = Variety::from_strs(
            &["x", "y", "u", "v", "z", "w"],
            &["y^2 - x^3 - 1", "x*u^2 + x*v^2 - 1", "x^2 - x"],
        )
        .unwrap();
        let plan = CharSumPlan::new(&v).unwrap();
        assert_eq!(plan.eliminated_vars(), [1]);
        assert_eq!(plan.fiber_groups(), [alloc::vec![2, 3]]);
        assert_eq!(plan.free_vars(), &[4, 5]);
        for p in [3u64, 5, 7] {
            assert_eq!(
                count_affine_charsum(&v, p, &cfg()),
                count_affine_bruteforce(&v, p, &cfg()),
                "p = {p}"
            );
        }
    }

    #[test]
    fn coefficient_divisible_by_p() {
        // 3*y^2 = x at p = 3 degenerates to x = 0 with y free
        let v = Variety::from_strs(&["x", "y"], &["3*y^2 - x"]).unwrap();
        assert_eq!(count_affine_charsum(&v, 3, &cfg()), Ok(3));
        assert_eq!(
            count_affine_charsum(&v, 7, &cfg()),
            count_affine_bruteforce(&v, 7, &cfg())
        );
    }

    #[test]
    fn constant_rest() {
        let v = Variety::from_strs(&["y"], &["y^2 - 2"]).unwrap();
        // 2 is a square mod 7, not mod 5
        assert_eq!(count_affine_charsum(&v, 7, &cfg()), Ok(2));
        assert_eq!(count_affine_charsum(&v, 5, &cfg()), Ok(0));
    }
}
