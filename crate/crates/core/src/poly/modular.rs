//! Coprimality certificates by reduction modulo a prime.
//!
//! Coefficients live in `ℚ[t]/(m)` with `m` monic in `ℤ[t]`. For a prime `p`
//! with `m mod p` squarefree, `𝔽_p[t]/(m)` is a product of residue fields
//! of `K`. If both leading coefficients reduce to units and Euclid's
//! algorithm over that ring ends in a unit, the images are coprime in every
//! factor, and then so are the originals: a monic common factor over `K`
//! divides two polynomials with unit leading coefficients at a prime above
//! `p`, so it is integral there and its image would be a common factor.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::special::numtheory::{is_prime_u64, mul_mod, pow_mod};

const TRIES: usize = 3;

struct Ring {
    p: u64,
    /// Monic modulus, low degree first, length `d + 1`.
    m: Vec<u64>,
}

type Elem = Vec<u64>;

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + p } else { r };
    r.to_u64().expect("reduced")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` by `b` in `𝔽_p[t]`, `b` nonzero and trimmed.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let lb = inv_mod(*b.last().expect("nonzero"), p);
    while a.len() >= b.len() {
        let c = mul_mod(*a.last().expect("nonempty"), lb, p);
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - mul_mod(c, bi, p)) % p;
        }
        a = trim(a);
    }
    a
}

/// `Some(s)` with `s·a ≡ 1 mod b` in `𝔽_p[t]`, when `gcd(a, b) = 1`.
fn poly_inv(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (b.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        // r0 = q·r1 + r
        let mut q = vec![0; r0.len().saturating_sub(r1.len()) + 1];
        let mut r = r0.clone();
        let li = inv_mod(*r1.last().unwrap(), p);
        while r.len() >= r1.len() && !r.is_empty() {
            let c = mul_mod(*r.last().unwrap(), li, p);
            let shift = r.len() - r1.len();
            q[shift] = c;
            for (i, &x) in r1.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(c, x, p)) % p;
            }
            r = trim(r);
        }
        let qs1 = poly_mul(&trim(q), &s1, p);
        let s = poly_sub(&s0, &qs1, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(s0.iter().map(|&x| mul_mod(x, c, p)).collect())
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

impl Ring {
    fn new(p: u64, modulus: &[BigInt]) -> Option<Self> {
        let m: Vec<u64> = modulus.iter().map(|c| reduce_int(c, p)).collect();
        // squarefree: gcd(m, m') = 1
        let dm: Vec<u64> = trim((1..m.len()).map(|i| mul_mod(m[i], i as u64 % p, p)).collect());
        if m.len() > 2 && poly_inv(&dm, &m, p).is_none() {
            return None;
        }
        Some(Self { p, m })
    }

    fn d(&self) -> usize {
        self.m.len() - 1
    }

    fn elem(&self, coords: &[BigRational]) -> Option<Elem> {
        let mut e = vec![0; self.d()];
        for (i, c) in coords.iter().enumerate() {
            let den = reduce_int(c.denom(), self.p);
            if den == 0 {
                return None;
            }
            e[i] = mul_mod(reduce_int(c.numer(), self.p), inv_mod(den, self.p), self.p);
        }
        Some(e)
    }

    fn is_zero(e: &Elem) -> bool {
        e.iter().all(|&x| x == 0)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let prod = poly_mul(&trim(a.clone()), &trim(b.clone()), self.p);
        let mut r = poly_rem(prod, &self.m, self.p);
        r.resize(self.d(), 0);
        r
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    fn inv(&self, a: &Elem) -> Option<Elem> {
        let mut s = poly_inv(a, &self.m, self.p)?;
        s.resize(self.d(), 0);
        Some(s)
    }

    fn trim_poly(mut a: Vec<Elem>) -> Vec<Elem> {
        while a.last().is_some_and(Self::is_zero) {
            a.pop();
        }
        a
    }

    /// Degree of the last nonzero remainder, or `None` when a leading
    /// coefficient is a zero divisor.
    fn gcd_degree(&self, mut a: Vec<Elem>, mut b: Vec<Elem>) -> Option<usize> {
        while !b.is_empty() {
            let li = self.inv(b.last().unwrap())?;
            while a.len() >= b.len() {
                let c = self.mul(a.last().unwrap(), &li);
                let shift = a.len() - b.len();
                for (i, bi) in b.iter().enumerate() {
                    a[shift + i] = self.sub(&a[shift + i], &self.mul(&c, bi));
                }
                a = Self::trim_poly(a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        Some(a.len().saturating_sub(1))
    }
}

/// True only if `a` and `b` are certainly coprime; `false` means unknown.
///
/// Coefficients are given by power-basis coordinates over `modulus`.
pub(crate) fn certify_coprime(a: &[&[BigRational]], b: &[&[BigRational]], modulus: &[BigInt]) -> bool {
    let mut p = (1u64 << 61) - 1;
    let mut tried = 0;
    while tried < TRIES && p > 3 {
        if is_prime_u64(p) {
            tried += 1;
            if let Some(true) = attempt(p, a, b, modulus) {
                return true;
            }
        }
        p -= 2;
    }
    false
}

fn attempt(p: u64, a: &[&[BigRational]], b: &[&[BigRational]], modulus: &[BigInt]) -> Option<bool> {
    let ring = Ring::new(p, modulus)?;
    let lift = |v: &[&[BigRational]]| -> Option<Vec<Elem>> { v.iter().map(|c| ring.elem(c)).collect() };
    let (ra, rb) = (lift(a)?, lift(b)?);
    // leading coefficients must stay units
    ring.inv(ra.last()?)?;
    ring.inv(rb.last()?)?;
    Some(ring.gcd_degree(ra, rb)? == 0)
}
