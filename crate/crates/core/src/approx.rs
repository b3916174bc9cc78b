//! `Z`-adic approximation of integer polynomials with unit constant term by
//! root-of-unity polynomials.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::special::{euler_phi, mul_cyclotomic_series, CycloFactorization, PrefixCandidates};
use crate::ZPoly;

/// Largest approximant degree `approximate_by_c` will expand.
pub const DEFAULT_DEGREE_BUDGET: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxError {
    #[error("constant term not ±1")]
    BadConstantTerm,
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("approximant needs degree at least {degree}, above the budget of {budget}")]
    DegreeBudgetExceeded { degree: u64, budget: u64 },
}

/// One level of the construction: `c` is the coefficient of `Z^level` in
/// `F − M` before the step, and `indices` the cyclotomic factors applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxStep {
    pub level: u64,
    pub c: BigInt,
    pub indices: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxTrace {
    pub steps: Vec<ApproxStep>,
    pub result: CycloFactorization,
}

impl ApproxTrace {
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.steps.iter().flat_map(|s| s.indices.iter().copied())
    }

    pub fn indices_distinct(&self) -> bool {
        let mut seen = HashSet::new();
        self.indices().all(|n| seen.insert(n))
    }

    pub fn degree(&self) -> u64 {
        self.result.degree()
    }
}

/// Runs the level-by-level construction on truncated series only, without
/// expanding the product.
///
/// With a budget, stops as soon as the accumulated degree exceeds it; the
/// reported degree is then a lower bound.
pub fn plan_approximation(f: &ZPoly, d: usize, budget: Option<u64>) -> Result<ApproxTrace, ApproxError> {
    if d == 0 {
        return Err(ApproxError::ZeroPrecision);
    }
    let c0 = f.constant_term();
    if !c0.abs().is_one() {
        return Err(ApproxError::BadConstantTerm);
    }
    let sign: i8 = if c0.is_negative() { -1 } else { 1 };
    // work with sign·F, whose constant term is 1
    let target: Vec<BigInt> = (0..d).map(|i| f.coeff(i) * BigInt::from(sign)).collect();
    let mut m = vec![BigInt::zero(); d];
    m[0] = BigInt::one();

    let mut cursors: HashMap<(u64, i8), PrefixCandidates> = HashMap::new();
    let mut used: HashSet<u64> = HashSet::new();
    let mut steps = Vec::new();
    let mut degree = 0u64;
    for level in 1..d {
        let c = &target[level] - &m[level];
        if c.is_zero() {
            continue;
        }
        let s: i8 = if c.is_positive() { 1 } else { -1 };
        let count = c.abs();
        let cursor = cursors
            .entry((level as u64, s))
            .or_insert_with(|| PrefixCandidates::new(level as u64, s));
        let mut indices = Vec::new();
        let mut k = BigInt::zero();
        while k < count {
            let n = cursor
                .find(|n| !used.contains(n))
                .expect("infinitely many prefix candidates");
            used.insert(n);
            degree += euler_phi(n);
            if let Some(b) = budget {
                if degree > b {
                    return Err(ApproxError::DegreeBudgetExceeded { degree, budget: b });
                }
            }
            mul_cyclotomic_series(&mut m, n);
            indices.push(n);
            k += 1u32;
        }
        debug_assert_eq!(m[level], target[level]);
        steps.push(ApproxStep {
            level: level as u64,
            c,
            indices,
        });
    }
    let all: Vec<u64> = steps.iter().flat_map(|s| s.indices.iter().copied()).collect();
    let result = CycloFactorization::new(sign, all).expect("indices are fresh");
    Ok(ApproxTrace { steps, result })
}

/// `M ∈ 𝒞` with `M ≡ F (mod Z^d)` and `M(0) = F(0)`, with the default budget.
pub fn approximate_by_c(f: &ZPoly, d: usize) -> Result<(ZPoly, ApproxTrace), ApproxError> {
    approximate_by_c_with_budget(f, d, DEFAULT_DEGREE_BUDGET)
}

pub fn approximate_by_c_with_budget(
    f: &ZPoly,
    d: usize,
    budget: u64,
) -> Result<(ZPoly, ApproxTrace), ApproxError> {
    let trace = plan_approximation(f, d, Some(budget))?;
    let m = trace.result.expand();
    debug_assert!((0..d).all(|i| m.coeff(i) == f.coeff(i)));
    debug_assert_eq!(m.degree().and_then(|x| x.to_u64()), Some(trace.degree()));
    Ok((m, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let (m, t) = approximate_by_c(&ZPoly::one(), 5).unwrap();
        assert!(m.is_one() && t.steps.is_empty());

        let (m, t) = approximate_by_c(&ZPoly::from_i64s(&[1, 2]), 2).unwrap();
        assert_eq!(m, ZPoly::from_i64s(&[1, 2, 2, 1]));
        assert_eq!(
            t.steps,
            vec![ApproxStep {
                level: 1,
                c: 2.into(),
                indices: vec![2, 3]
            }]
        );

        let (m, _) = approximate_by_c(&ZPoly::from_i64s(&[-1, -1]), 2).unwrap();
        assert_eq!(m, ZPoly::from_i64s(&[-1, -1]));

        assert_eq!(
            approximate_by_c(&ZPoly::from_i64s(&[2, 1]), 2),
            Err(ApproxError::BadConstantTerm)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let f = ZPoly::from_i64s(&[1, 0, 0, 0, 0, 40]);
        match approximate_by_c_with_budget(&f, 6, 100) {
            Err(ApproxError::DegreeBudgetExceeded { degree, budget }) => {
                assert!(degree > budget && budget == 100)
            }
            other => panic!("{:?}", other),
        }
    }
}
