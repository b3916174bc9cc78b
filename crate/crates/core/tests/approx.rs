mod common;

use common::*;
use diophz::approx::{approximate_by_c, plan_approximation, ApproxError};
use diophz::special::recognize_c;
use diophz::ZPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `Φₙ mod Z^d` from `Φₙ = ∏_{e|n} (Z^e − 1)^{μ(n/e)}`: factors with `e ≥ d`
/// contribute only their constant term.
fn o_cyclo_series(n: u64, d: usize) -> Coeffs {
    let mut s = vec![BigInt::zero(); d];
    s[0] = BigInt::one();
    for e in (1..d as u64).filter(|e| n % e == 0) {
        let e = e as usize;
        match o_mobius(n / e as u64) {
            // times (1 − Z^e)
            1 => {
                for i in (e..d).rev() {
                    let t = s[i - e].clone();
                    s[i] -= t;
                }
            }
            // times 1/(1 − Z^e) = Σ Z^{ke}
            -1 => {
                for i in e..d {
                    let t = s[i - e].clone();
                    s[i] += t;
                }
            }
            _ => {}
        }
    }
    if n == 1 {
        for c in &mut s {
            *c = -c.clone();
        }
    }
    s
}

fn o_product_series(sign: i8, indices: &[u64], d: usize) -> Coeffs {
    let mut acc = vec![BigInt::zero(); d];
    acc[0] = BigInt::from(sign);
    for &n in indices {
        let f = o_cyclo_series(n, d);
        let mut next = vec![BigInt::zero(); d];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate().take(d - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

fn truncated(c: &[BigInt], d: usize) -> Coeffs {
    (0..d).map(|i| c.get(i).cloned().unwrap_or_default()).collect()
}

fn unit_poly() -> impl Strategy<Value = Coeffs> {
    (proptest::collection::vec(-5i64..=5, 0..=6), any::<bool>()).prop_map(|(rest, neg)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(rest);
        ints(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plan_matches_target(f in unit_poly(), d in 1usize..=6) {
        let trace = plan_approximation(&zpoly(&f), d, None).unwrap();
        prop_assert!(trace.indices_distinct());
        let got = o_product_series(trace.result.sign(), trace.result.indices(), d);
        prop_assert_eq!(got, truncated(&f, d));
    }

    #[test]
    fn refinement_is_monotone(f in unit_poly(), d in 1usize..=5) {
        let short = plan_approximation(&zpoly(&f), d, None).unwrap();
        let long = plan_approximation(&zpoly(&f), d + 1, None).unwrap();
        prop_assert_eq!(&long.steps[..short.steps.len()], &short.steps[..]);
        let m = o_product_series(short.result.sign(), short.result.indices(), d);
        let m2 = o_product_series(long.result.sign(), long.result.indices(), d);
        prop_assert_eq!(m, m2);
    }

    #[test]
    fn expansion_is_recognized(f in unit_poly(), d in 1usize..=3) {
        match approximate_by_c(&zpoly(&f), d) {
            Ok((m, trace)) => {
                prop_assert_eq!(truncated(&zc(&m), d), truncated(&f, d));
                let fact = recognize_c(&m).expect("M is a root-of-unity polynomial");
                let mut idx: Vec<u64> = trace.indices().collect();
                idx.sort_unstable();
                prop_assert_eq!(fact.indices(), &idx[..]);
                prop_assert_eq!(fact.sign(), trace.result.sign());
            }
            Err(ApproxError::DegreeBudgetExceeded { .. }) => {
                let plan = plan_approximation(&zpoly(&f), d, None).unwrap();
                prop_assert!(plan.degree() > diophz::approx::DEFAULT_DEGREE_BUDGET);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn unit_prefixes_are_dense() {
    // every prefix in {−2,…,2}^d with leading ±1, d ≤ 4
    for d in 1..=4usize {
        let total = 2 * 5usize.pow(d as u32 - 1);
        for code in 0..total {
            let mut c = vec![if code % 2 == 0 { 1 } else { -1 }];
            let mut k = code / 2;
            for _ in 1..d {
                c.push((k % 5) as i64 - 2);
                k /= 5;
            }
            let f = ints(&c);
            let trace = plan_approximation(&zpoly(&f), d, None).unwrap();
            assert_eq!(o_product_series(trace.result.sign(), trace.result.indices(), d), truncated(&f, d));
        }
    }
}

#[test]
fn rejects_bad_constant_term() {
    for c in [0, 2, -3] {
        let f = ZPoly::from_i64s(&[c, 1]);
        assert_eq!(plan_approximation(&f, 3, None).unwrap_err(), ApproxError::BadConstantTerm);
    }
    assert_eq!(plan_approximation(&ZPoly::one(), 0, None).unwrap_err(), ApproxError::ZeroPrecision);
}
