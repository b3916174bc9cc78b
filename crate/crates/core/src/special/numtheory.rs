//! Small-integer number theory: factorization, φ, μ, and word-size primes.

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn moebius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(1, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every `n ≥ 1` with `φ(n) ≤ bound`, ascending.
pub fn totient_at_most(bound: u64) -> Vec<u64> {
    // φ(n) ≥ √(n/2), so every such n is at most 2·bound² + 1
    let primes: Vec<u64> = {
        let limit = bound.saturating_add(1);
        let mut sieve = vec![true; (limit + 1) as usize];
        let mut ps = Vec::new();
        for i in 2..=limit {
            if sieve[i as usize] {
                ps.push(i);
                let mut j = i * i;
                while j <= limit {
                    sieve[j as usize] = false;
                    j += i;
                }
            }
        }
        ps
    };
    let mut out = Vec::new();
    // depth-first over prime powers with increasing primes
    fn walk(primes: &[u64], start: usize, n: u64, phi: u64, bound: u64, out: &mut Vec<u64>) {
        out.push(n);
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let mut phi_next = phi * (p - 1);
            if phi_next > bound {
                break;
            }
            let mut m = n * p;
            loop {
                walk(primes, i + 1, m, phi_next, bound, out);
                phi_next *= p;
                if phi_next > bound {
                    break;
                }
                m *= p;
            }
        }
    }
    walk(&primes, 0, 1, 1, bound, &mut out);
    out.sort_unstable();
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A prime `q ≡ 1 (mod n)` above `2^32` together with an element of exact
/// multiplicative order `n` modulo `q`.
pub(crate) fn prime_with_root_of_unity(n: u64) -> Option<(u64, u64)> {
    let primes: Vec<u64> = factorize(n).iter().map(|&(p, _)| p).collect();
    let mut k = ((1u64 << 32) / n).max(1);
    loop {
        let q = k.checked_mul(n)?.checked_add(1)?;
        k += 1;
        if !is_prime_u64(q) {
            continue;
        }
        for a in 2..q {
            let g = pow_mod(a, (q - 1) / n, q);
            if primes.iter().all(|&p| pow_mod(g, n / p, q) != 1) {
                return Some((q, g));
            }
        }
    }
}
