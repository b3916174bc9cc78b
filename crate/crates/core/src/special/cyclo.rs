use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::numtheory::{
    euler_phi, factorize, is_squarefree, moebius, prime_with_root_of_unity, pow_mod, radical,
    totient_at_most,
};
use crate::ZPoly;

fn cache() -> &'static RwLock<HashMap<u64, Arc<ZPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<ZPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Multiplies a truncated series by `Φₙ`, `n ≥ 2`, using its Möbius product.
pub(crate) fn mul_cyclotomic_series(series: &mut [BigInt], n: u64) {
    debug_assert!(n >= 2);
    let prec = series.len();
    let mut factors: Vec<(usize, bool)> = super::numtheory::divisors(n)
        .into_iter()
        .filter_map(|a| match moebius(a) {
            0 => None,
            mu => Some(((n / a) as usize, mu < 0)),
        })
        .filter(|&(k, _)| k < prec)
        .collect();
    factors.sort_by_key(|&(_, inv)| inv);
    for (k, inv) in factors {
        apply_binomial(series, k, inv);
    }
}

/// The `n`-th cyclotomic polynomial `Φₙ`, memoized.
pub fn cyclotomic(n: u64) -> Arc<ZPoly> {
    assert!(n >= 1, "cyclotomic(0)");
    if let Some(p) = cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(n));
    // a concurrent writer computed the same value; either copy is fine
    cache()
        .write()
        .expect("cache lock")
        .entry(n)
        .or_insert(p)
        .clone()
}

/// Exact quotients only:
/// `Φₙ(Z) = Φ_{rad n}(Z^{n/rad n})`, `Φ_p = (Z^p − 1)/(Z − 1)` and
/// `Φ_{mp}(Z) = Φ_m(Z^p)/Φ_m(Z)` for a prime `p ∤ m`.
fn compute_cyclotomic(n: u64) -> ZPoly {
    if n == 1 {
        return ZPoly::from_i64s(&[-1, 1]);
    }
    let rad = radical(n);
    if rad < n {
        return spread(&cyclotomic(rad), (n / rad) as usize);
    }
    let primes = factorize(n);
    let p = primes.last().expect("n > 1").0;
    let m = n / p;
    if m == 1 {
        return ZPoly::z_pow_minus_one(p as usize)
            .checked_div(&cyclotomic(1))
            .expect("Z - 1 divides Z^p - 1");
    }
    let base = cyclotomic(m);
    spread(&base, p as usize)
        .checked_div(&base)
        .expect("Φ_m divides Φ_m(Z^p)")
}

/// `P(Z^k)`.
fn spread(p: &ZPoly, k: usize) -> ZPoly {
    let mut coeffs = vec![BigInt::zero(); (p.coeffs().len() - 1) * k + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    ZPoly::from_coeffs(coeffs)
}

/// Multiplies a truncated series by `(1 − Z^k)^{±1}` in place.
fn apply_binomial(series: &mut [BigInt], k: usize, invert: bool) {
    let len = series.len();
    if invert {
        for i in k..len {
            let prev = series[i - k].clone();
            series[i] += prev;
        }
    } else {
        for i in (k..len).rev() {
            let prev = series[i - k].clone();
            series[i] -= prev;
        }
    }
}

/// `Φₙ mod Z^prec` as a coefficient vector of length `prec`, from the
/// Möbius product `∏_{a|n} (1 − Z^{n/a})^{μ(a)}` (negated for `n = 1`).
pub fn cyclotomic_series(n: u64, prec: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); prec];
    if prec == 0 {
        return s;
    }
    s[0] = BigInt::one();
    let mut factors: Vec<(usize, bool)> = super::numtheory::divisors(n)
        .into_iter()
        .filter_map(|a| match moebius(a) {
            0 => None,
            mu => Some(((n / a) as usize, mu < 0)),
        })
        .filter(|&(k, _)| k < prec)
        .collect();
    // multiply before dividing; the order does not change the result
    factors.sort_by_key(|&(_, inv)| inv);
    for (k, inv) in factors {
        apply_binomial(&mut s, k, inv);
    }
    if n == 1 {
        for c in s.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    s
}

/// `(d, s)` with `Φₙ ≡ 1 + s·Z^d (mod Z^{2d})`, `n ≥ 2`: `d = ∏ p^{e−1}` and
/// `s = (−1)^{k+1}` for `k` distinct primes.
pub fn cyclo_low_terms(n: u64) -> (u64, i8) {
    assert!(n >= 2, "cyclo_low_terms needs n >= 2");
    let f = factorize(n);
    let d: u64 = f.iter().map(|&(p, e)| p.pow(e - 1)).product();
    let s = if f.len() % 2 == 1 { 1 } else { -1 };
    #[cfg(debug_assertions)]
    if d <= 512 {
        let series = cyclotomic_series(n, 2 * d as usize);
        for (i, c) in series.iter().enumerate() {
            let expected = match i {
                0 => 1,
                i if i as u64 == d => s as i64,
                _ => 0,
            };
            debug_assert_eq!(c, &BigInt::from(expected), "Φ_{} coefficient {}", n, i);
        }
    }
    (d, s)
}

/// All `n ≥ 2` with `cyclo_low_terms(n) = (d, s)`, ascending.
///
/// These are `n = d·r` with `r` squarefree and `rad(d) | r`.
#[derive(Debug, Clone)]
pub struct PrefixCandidates {
    d: u64,
    rad_d: u64,
    primes_in_d: usize,
    sign: i8,
    j: u64,
}

impl PrefixCandidates {
    pub fn new(d: u64, sign: i8) -> Self {
        assert!(d >= 1 && (sign == 1 || sign == -1));
        Self {
            d,
            rad_d: radical(d),
            primes_in_d: factorize(d).len(),
            sign,
            j: 0,
        }
    }
}

impl Iterator for PrefixCandidates {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            self.j += 1;
            let j = self.j;
            if !is_squarefree(j) || j.gcd(&self.rad_d) != 1 {
                continue;
            }
            let n = self.d.checked_mul(self.rad_d)?.checked_mul(j)?;
            if n < 2 {
                continue;
            }
            let k = self.primes_in_d + factorize(j).len();
            let s = if k % 2 == 1 { 1 } else { -1 };
            if s == self.sign {
                return Some(n);
            }
        }
    }
}

/// Smallest `n ∉ exclusions` with `Φₙ ≡ 1 + s·Z^d (mod Z^{2d})`.
pub fn find_cyclotomic_prefix(d: u64, s: i8, exclusions: &HashSet<u64>) -> u64 {
    PrefixCandidates::new(d, s)
        .find(|n| !exclusions.contains(n))
        .expect("infinitely many candidates")
}

/// `sign · ∏ Φₙ` over distinct indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloFactorization {
    sign: i8,
    indices: Vec<u64>,
}

impl CycloFactorization {
    /// Sorts the indices; `None` on a repeated or zero index or a bad sign.
    pub fn new(sign: i8, mut indices: Vec<u64>) -> Option<Self> {
        if sign != 1 && sign != -1 {
            return None;
        }
        indices.sort_unstable();
        if indices.first() == Some(&0) || indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self { sign, indices })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn degree(&self) -> u64 {
        self.indices.iter().map(|&n| euler_phi(n)).sum()
    }

    /// Exponents `E_k` with `∏ Φₙ = ∏_k (Z^k − 1)^{E_k}`.
    fn binomial_exponents(&self) -> BTreeMap<u64, i64> {
        let mut e = BTreeMap::new();
        for &n in &self.indices {
            for a in super::numtheory::divisors(n) {
                let mu = moebius(a);
                if mu != 0 {
                    *e.entry(n / a).or_insert(0) += mu as i64;
                }
            }
        }
        e.retain(|_, v| *v != 0);
        e
    }

    /// The polynomial itself.
    pub fn expand(&self) -> ZPoly {
        let exps = self.binomial_exponents();
        let mut c = vec![BigInt::one()];
        for (&k, &e) in exps.iter().filter(|(_, &e)| e > 0) {
            let k = k as usize;
            for _ in 0..e {
                // times (Z^k − 1)
                c.resize(c.len() + k, BigInt::zero());
                for i in (0..c.len()).rev() {
                    let shifted = if i >= k { c[i - k].clone() } else { BigInt::zero() };
                    let old = std::mem::take(&mut c[i]);
                    c[i] = shifted - old;
                }
            }
        }
        for (&k, &e) in exps.iter().filter(|(_, &e)| e < 0) {
            let k = k as usize;
            for _ in 0..-e {
                // divided by (Z^k − 1): P[i] = q[i−k] − q[i]
                let qlen = c.len() - k;
                let mut q = vec![BigInt::zero(); qlen];
                for i in 0..qlen {
                    let back = if i >= k { q[i - k].clone() } else { BigInt::zero() };
                    q[i] = back - &c[i];
                }
                debug_assert!((qlen..c.len()).all(|i| {
                    let back = if i >= k { q[i - k].clone() } else { BigInt::zero() };
                    c[i] == back
                }));
                c = q;
            }
        }
        let p = ZPoly::from_coeffs(c);
        if self.sign < 0 {
            -p
        } else {
            p
        }
    }

    /// The polynomial modulo `Z^prec`.
    pub fn truncated(&self, prec: usize) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); prec];
        if prec == 0 {
            return s;
        }
        s[0] = BigInt::from(self.sign);
        for (&k, &e) in &self.binomial_exponents() {
            let k = k as usize;
            // (Z^k − 1)^e = (−1)^e (1 − Z^k)^e
            if e % 2 != 0 {
                for c in s.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            if k >= prec {
                continue;
            }
            for _ in 0..e.abs() {
                apply_binomial(&mut s, k, e < 0);
            }
        }
        s
    }
}

fn modular_root_cache() -> &'static RwLock<HashMap<u64, (u64, u64)>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn modular_root(n: u64) -> Option<(u64, u64)> {
    if let Some(&v) = modular_root_cache().read().expect("cache lock").get(&n) {
        return Some(v);
    }
    let v = prime_with_root_of_unity(n)?;
    modular_root_cache().write().expect("cache lock").insert(n, v);
    Some(v)
}

/// Coefficients kept as `(sign, base-2^64 digits)` for fast reduction.
struct Residues {
    coeffs: Vec<(Sign, Vec<u64>)>,
}

impl Residues {
    fn new(p: &ZPoly) -> Self {
        Self {
            coeffs: p.coeffs().iter().map(|c| c.to_u64_digits()).collect(),
        }
    }

    /// `P(g) mod q`.
    fn eval(&self, g: u64, q: u64) -> u64 {
        let base = ((1u128 << 64) % q as u128) as u64;
        let reduce = |(sign, digits): &(Sign, Vec<u64>)| -> u64 {
            let mut r = 0u64;
            for &d in digits.iter().rev() {
                r = ((r as u128 * base as u128 + (d % q) as u128) % q as u128) as u64;
            }
            if *sign == Sign::Minus && r != 0 {
                q - r
            } else {
                r
            }
        };
        self.coeffs.iter().rev().fold(0u64, |acc, c| {
            ((acc as u128 * g as u128 + reduce(c) as u128) % q as u128) as u64
        })
    }
}

/// The factorization of `F` as `±` a product of distinct cyclotomic
/// polynomials, if it is one.
///
/// Every `Φₙ` dividing `F` has `φ(n) ≤ deg F`; candidates are screened by
/// evaluating at a primitive `n`-th root of unity modulo a prime before the
/// exact division.
pub fn recognize_c(f: &ZPoly) -> Option<CycloFactorization> {
    let lead = f.leading_coefficient()?;
    if !f.constant_term().abs().is_one() || !lead.abs().is_one() {
        return None;
    }
    let sign: i8 = if lead.is_negative() { -1 } else { 1 };
    let mut residual = if sign < 0 { -f } else { f.clone() };
    let bound = residual.degree().expect("nonzero") as u64;
    let mut residues = Residues::new(&residual);
    if let Some(fact) = screened_guess(&residual, &residues, sign, bound) {
        return Some(fact);
    }
    let mut indices = Vec::new();
    for n in totient_at_most(bound) {
        let deg = residual.degree().expect("nonzero") as u64;
        if deg == 0 {
            break;
        }
        if euler_phi(n) > deg {
            continue;
        }
        if let Some((q, g)) = modular_root(n) {
            if residues.eval(g, q) != 0 {
                continue;
            }
            debug_assert_eq!(pow_mod(g, n, q), 1);
        }
        if let Some(quot) = residual.checked_div(&cyclotomic(n)) {
            residual = quot;
            residues = Residues::new(&residual);
            indices.push(n);
        }
    }
    if residual.is_one() {
        CycloFactorization::new(sign, indices)
    } else {
        None
    }
}

// Every index whose root is a root of `f` modulo its screening prime; when
// their degrees add up and the product expands back to `f`, no division is
// needed. False positives only cost the fallback.
fn screened_guess(f: &ZPoly, residues: &Residues, sign: i8, bound: u64) -> Option<CycloFactorization> {
    let mut indices = Vec::new();
    let mut total = 0;
    for n in totient_at_most(bound) {
        let phi = euler_phi(n);
        if phi > bound {
            continue;
        }
        let (q, g) = modular_root(n)?;
        if residues.eval(g, q) == 0 {
            total += phi;
            if total > bound {
                return None;
            }
            indices.push(n);
        }
    }
    let fact = CycloFactorization::new(sign, indices)?;
    (total == bound && &fact.expand() == f).then_some(fact)
}
