#![allow(dead_code)]

//! Independent oracles and samplers shared by the integration tests.
//!
//! The oracles work on plain `Vec<BigInt>` coefficient vectors (lowest
//! degree first) and never call into the library's polynomial code.

use std::sync::Arc;

use diophz::arith::{FieldDescriptor, NumberFieldElement};
use diophz::scalar::Ring;
use diophz::text::parse_field;
use diophz::{KPoly, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type Coeffs = Vec<BigInt>;

pub fn trim(mut a: Coeffs) -> Coeffs {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn ints(xs: &[i64]) -> Coeffs {
    trim(xs.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn o_mul(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn o_sub(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Schoolbook long division by a divisor with leading coefficient ±1.
pub fn o_divmod(a: &[BigInt], b: &[BigInt]) -> (Coeffs, Coeffs) {
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    assert!(lead == BigInt::one() || lead == -BigInt::one());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn o_divides(b: &[BigInt], a: &[BigInt]) -> bool {
    o_divmod(a, b).1.is_empty()
}

/// `Z^n − 1`.
pub fn z_pow_minus_one(n: usize) -> Coeffs {
    let mut v = vec![BigInt::zero(); n + 1];
    v[0] = -BigInt::one();
    v[n] = BigInt::one();
    v
}

/// Möbius function by trial division.
pub fn o_mobius(mut n: u64) -> i32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Φₙ = ∏_{d|n} (Z^d − 1)^{μ(n/d)}`, multiplying out the numerator and
/// dividing by each denominator factor.
pub fn o_cyclotomic(n: u64) -> Coeffs {
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = ints(&[1]);
    for &d in &divisors {
        if o_mobius(n / d) == 1 {
            num = o_mul(&num, &z_pow_minus_one(d as usize));
        }
    }
    for &d in &divisors {
        if o_mobius(n / d) == -1 {
            let (q, r) = o_divmod(&num, &z_pow_minus_one(d as usize));
            assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// `(d, s)` with `d = ∏ pᵢ^{eᵢ−1}` and `s = (−1)^{k+1}` for `k` distinct primes.
pub fn o_low_terms(mut n: u64) -> (u64, i64) {
    let mut d = 1;
    let mut k = 0;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            k += 1;
            n /= p;
            while n % p == 0 {
                d *= p;
                n /= p;
            }
        }
        p += 1;
    }
    (d, if k % 2 == 1 { 1 } else { -1 })
}

pub fn zc(p: &ZPoly) -> Coeffs {
    trim(p.coeffs().to_vec())
}

pub fn zpoly(c: &[BigInt]) -> ZPoly {
    ZPoly::from_coeffs(c.to_vec())
}

pub fn kpoly_from_ints(c: &[BigInt]) -> KPoly {
    KPoly::from_coeffs(c.iter().map(|x| NumberFieldElement::from_integer(x.clone())).collect())
}

pub fn field(s: &str) -> Arc<FieldDescriptor> {
    parse_field(s).unwrap()
}

pub fn q() -> Arc<FieldDescriptor> {
    FieldDescriptor::rationals()
}

pub fn qi() -> Arc<FieldDescriptor> {
    field("Q(a)/a^2+1")
}

pub fn qsqrt5() -> Arc<FieldDescriptor> {
    field("Q(a)/a^2-5")
}

pub fn qzeta5() -> Arc<FieldDescriptor> {
    field("Q(a)/a^4+a^3+a^2+a+1")
}

pub fn qzeta8() -> Arc<FieldDescriptor> {
    field("Q(a)/a^4+1")
}

pub fn random_int(rng: &mut impl Rng, lo: i64, hi: i64) -> BigInt {
    BigInt::from(rng.gen_range(lo..=hi))
}

pub fn random_zpoly(rng: &mut impl Rng, max_deg: usize, height: i64) -> Coeffs {
    let deg = rng.gen_range(0..=max_deg);
    trim((0..=deg).map(|_| random_int(rng, -height, height)).collect())
}

pub fn random_rational(rng: &mut impl Rng, height: i64) -> BigRational {
    let num = random_int(rng, -height, height);
    let den = BigInt::from(rng.gen_range(1..=height.max(1)));
    BigRational::new(num, den)
}

pub fn random_element(rng: &mut impl Rng, field: &Arc<FieldDescriptor>, height: i64) -> NumberFieldElement {
    let coords = (0..field.degree()).map(|_| random_rational(rng, height)).collect();
    NumberFieldElement::from_coords(field, coords)
}

pub fn random_kpoly(rng: &mut impl Rng, field: &Arc<FieldDescriptor>, max_deg: usize, height: i64) -> KPoly {
    let deg = rng.gen_range(0..=max_deg);
    KPoly::from_coeffs((0..=deg).map(|_| random_element(rng, field, height)).collect())
}

/// Signed products `±∏_{d∈S} Φ_d` over the subsets `S` of the divisors of
/// `u`, computed with the oracle.
pub fn signed_subset_products(u: u64) -> Vec<(i64, Vec<u64>, Coeffs)> {
    let divisors: Vec<u64> = (1..=u).filter(|d| u % d == 0).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << divisors.len()) {
        let subset: Vec<u64> = divisors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &d)| d)
            .collect();
        let mut p = ints(&[1]);
        for &d in &subset {
            p = o_mul(&p, &o_cyclotomic(d));
        }
        for sign in [1i64, -1] {
            let signed: Coeffs = p.iter().map(|c| c * sign).collect();
            out.push((sign, subset.clone(), signed));
        }
    }
    out
}

/// One CLI invocation with its expected stdout and exit code.
pub struct Golden {
    pub args: &'static [&'static str],
    pub stdout: &'static str,
    pub code: i32,
}

pub const GOLDEN_ZZ: &str = r#"{
  "schema": "dioph-cert/1",
  "kind": "zz",
  "field": "Q",
  "data": {
    "M": "Z^2 + 1",
    "D": "Z^3 - 1",
    "Q": "0",
    "R": "Z^2 + 1",
    "C": "2",
    "X": "Z^2 + 3"
  }
}
"#;

pub const GOLDENS: &[Golden] = &[
    Golden { args: &["cyclo", "6"], stdout: "Z^2 - Z + 1\n", code: 0 },
    Golden { args: &["cyclo", "12"], stdout: "Z^4 - Z^2 + 1\n", code: 0 },
    Golden { args: &["cyclo", "1"], stdout: "Z - 1\n", code: 0 },
    Golden { args: &["cheb", "2"], stdout: "X = 2*Z^2 - 1\nY = 2*Z\n", code: 0 },
    Golden { args: &["cheb", "-1"], stdout: "X = Z\nY = -1\n", code: 0 },
    Golden { args: &["recognize-c", "Z^3 + 2*Z^2 + 2*Z + 1"], stdout: "sign = +1\nindices = [2, 3]\n", code: 0 },
    Golden { args: &["recognize-c", "Z + 2"], stdout: "", code: 1 },
    Golden { args: &["recognize-c", "Z^2 + Z - 1"], stdout: "", code: 1 },
    Golden { args: &["approx", "1 + 2*Z", "2"], stdout: "M = Z^3 + 2*Z^2 + 2*Z + 1\nlevel 1: c = 2, indices = [2, 3]\n", code: 0 },
    Golden { args: &["approx", "3 + Z", "2"], stdout: "", code: 1 },
    Golden { args: &["witness", "zz", "Z^2 + 3"], stdout: GOLDEN_ZZ, code: 0 },
    Golden { args: &["witness", "divu", "1 - Z - Z^3", "5"], stdout: "", code: 1 },
    Golden { args: &["valuation", "Z^2/(1 + Z)"], stdout: "v_Z = 2\nv_Zinf = -1\n", code: 0 },
    Golden { args: &["valuation", "0"], stdout: "v_Z = inf\nv_Zinf = inf\n", code: 0 },
    Golden { args: &["qf", "case", "1"], stdout: "case = vZ_le0\nv_Z(G) = -2\nv_Zinf(G) = 1\nconsistent = true\n", code: 0 },
    Golden { args: &["qf", "case", "Z"], stdout: "case = vZinf_negative\nv_Z(G) = -2\nv_Zinf(G) = 2\nconsistent = true\n", code: 0 },
    Golden { args: &["--field", "Q(a)/a^2+1", "decompose", "(Z + a*Z^2)/3"], stdout: "X0 = Z\nX1 = Z^2\ny = 3\n", code: 0 },
    Golden { args: &["--field", "Q(a)/a^2+1", "embeddings"], stdout: "0.000000000000000 + 1.000000000000000i\n0.000000000000000 - 1.000000000000000i\n", code: 0 },
    Golden { args: &["--field", "Q(a", "cyclo", "3"], stdout: "", code: 2 },
    Golden { args: &["verify", "/nonexistent/cert.json"], stdout: "", code: 2 },
];
pub mod mutate;
