mod common;

use common::*;
use diophz::arith::NumberFieldElement;
use diophz::qf::*;
use diophz::{KPoly, KRatFunc};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn deg(p: &KPoly) -> i64 {
    p.degree().unwrap() as i64
}

fn low(p: &KPoly) -> i64 {
    p.lowest_order().unwrap() as i64
}

/// `(v_Z, v_{Z⁻¹})` from numerator and denominator degrees.
fn o_valuations(f: &KRatFunc) -> (i64, i64) {
    let (n, d) = (f.numerator(), f.denominator());
    (low(n) - low(d), deg(d) - deg(n))
}

fn nonzero_kpoly(rng: &mut impl Rng, max_deg: usize) -> KPoly {
    loop {
        let p = random_kpoly(rng, &qi(), max_deg, 3);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_x(rng: &mut impl Rng) -> KRatFunc {
    let num = if rng.gen_bool(0.1) { KPoly::zero() } else { nonzero_kpoly(rng, 4) };
    KRatFunc::new(num, nonzero_kpoly(rng, 4)).unwrap()
}

/// `n/P` with `deg n ≤ deg P`.
fn random_bounded(rng: &mut impl Rng) -> KRatFunc {
    let den = nonzero_kpoly(rng, 3);
    let num = random_kpoly(rng, &qi(), den.degree().unwrap(), 3);
    KRatFunc::new(num, den).unwrap()
}

#[test]
fn case_table_holds() {
    let mut rng = rng(21);
    let (mut checked, mut negative) = (0, 0);
    for _ in 0..300 {
        let x = random_x(&mut rng);
        let rep = match valuation_case_analysis(&x) {
            Ok(r) => r,
            Err(QfError::ZeroDenominator) | Err(QfError::ZeroNumerator) => continue,
            Err(e) => panic!("{}", e),
        };
        checked += 1;
        assert!(rep.consistent, "{}", x);
        let g = build_g(&x).unwrap().g;
        let (vz_g, vzinf_g) = o_valuations(&g);
        assert_eq!((rep.vz_g, rep.vzinf_g), (vz_g, vzinf_g));
        let x_nonneg = x.is_zero() || o_valuations(&x).1 >= 0;
        if x_nonneg {
            assert_eq!((vzinf_g, vz_g), (1, -2), "{}", x);
        } else {
            negative += 1;
            assert_eq!(vzinf_g, 2, "{}", x);
            let f = build_f(&g, &random_bounded(&mut rng), &random_bounded(&mut rng));
            assert_eq!(o_valuations(&f).1, 2, "F for X = {}", x);
        }
    }
    assert!(checked > 250);
    assert!(negative > 50);
}

#[test]
fn forms_have_eight_entries() {
    let f = qi();
    let i = NumberFieldElement::generator(&f);
    let cfg = HypothesisHConfig::new(&f, 5, i.clone(), NumberFieldElement::integer(5)).unwrap();
    assert!(cfg.has_sqrt_minus_one);
    assert_eq!(cfg.unchecked_claims.len(), 3);
    let big_f = KRatFunc::var();
    let (q1, q2) = assemble_kr_forms(&big_f, &cfg).unwrap();
    assert_eq!((q1.dim(), q2.dim()), (8, 8));
    // q2 differs from q1 only where F sits
    let diff: Vec<usize> = (0..8).filter(|&k| q1.entries()[k] != q2.entries()[k]).collect();
    assert_eq!(diff, vec![6, 7]);
    let (a1, _) = assemble_aniso_forms(&big_f, &cfg).unwrap();
    assert_eq!(a1.dim(), 8);
    assert!(matches!(
        HypothesisHConfig::new(&f, 4, i.clone(), NumberFieldElement::integer(5)),
        Err(QfError::NotOddPrime(4))
    ));
    assert!(matches!(
        HypothesisHConfig::new(&f, 5, NumberFieldElement::integer(2), NumberFieldElement::integer(5)),
        Err(QfError::NotRootOfUnity)
    ));
}

#[test]
fn search_finds_split_witnesses() {
    let one = KRatFunc::one();
    let form = DiagonalForm::new(vec![one.clone(), -&one]).unwrap();
    let v = search_isotropy_witness(&form, 3, 200, 2, 3).expect("hyperbolic plane is isotropic");
    assert!(verify_isotropy_witness(&form, &v).unwrap());
}

fn entry() -> impl Strategy<Value = KRatFunc> {
    (proptest::collection::vec(-4i64..=4, 1..4), proptest::collection::vec(-3i64..=3, 1..3)).prop_filter_map(
        "nonzero",
        |(n, d)| {
            let (n, d) = (KPoly::from_i64s(&n), KPoly::from_i64s(&d));
            (!n.is_zero() && !d.is_zero()).then(|| KRatFunc::new(n, d).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_permutation_invariant(
        entries in proptest::collection::vec(entry(), 1..6),
        seed in any::<u64>(),
    ) {
        let mut rng = rng(seed);
        let v: Vec<KRatFunc> = entries.iter().map(|_| {
            KRatFunc::from_poly(KPoly::from_i64s(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]))
        }).collect();
        let form = DiagonalForm::new(entries.clone()).unwrap();
        let mut perm: Vec<usize> = (0..entries.len()).collect();
        perm.shuffle(&mut rng);
        let pe: Vec<KRatFunc> = perm.iter().map(|&k| entries[k].clone()).collect();
        let pv: Vec<KRatFunc> = perm.iter().map(|&k| v[k].clone()).collect();
        let permuted = DiagonalForm::new(pe).unwrap();
        prop_assert_eq!(evaluate_form(&form, &v).unwrap(), evaluate_form(&permuted, &pv).unwrap());
    }

    #[test]
    fn isotropy_is_homogeneous(a in entry(), c in entry()) {
        // ⟨a, −a·c²⟩ vanishes at (c, 1)
        let form = DiagonalForm::new(vec![a.clone(), -&(&a * &(&c * &c))]).unwrap();
        let v = vec![c.clone(), KRatFunc::one()];
        prop_assert!(verify_isotropy_witness(&form, &v).unwrap());
        let scaled: Vec<KRatFunc> = v.iter().map(|x| x * &c).collect();
        prop_assert!(verify_isotropy_witness(&form, &scaled).unwrap());
        prop_assert!(!verify_isotropy_witness(&form, &[KRatFunc::zero(), KRatFunc::zero()]).unwrap());
    }
}
