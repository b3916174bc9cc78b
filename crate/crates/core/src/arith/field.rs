use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithError;
use crate::poly::{clear_denominators, Polynomial};

/// How far irreducibility of the defining polynomial was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Proven,
    /// Degree above 4 with no rational root found; not otherwise checked.
    Unchecked,
}

/// `K = ℚ[t]/(m(t))` with `m` monic with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    modulus: Polynomial<BigInt>,
    modulus_q: Polynomial<BigRational>,
    symbol: String,
    label: String,
    irreducibility: Irreducibility,
    substitution: BigInt,
}

impl FieldDescriptor {
    /// ℚ itself, presented as `ℚ[a]/(a)`.
    pub fn rationals() -> Arc<Self> {
        let modulus = Polynomial::monomial(BigInt::one(), 1);
        Arc::new(Self {
            modulus_q: modulus.to_rational(),
            modulus,
            symbol: "a".into(),
            label: "Q".into(),
            irreducibility: Irreducibility::Proven,
            substitution: BigInt::one(),
        })
    }

    /// Builds `ℚ[symbol]/(p)`.
    ///
    /// A non-monic or non-integral `p` is replaced by the monic integral
    /// polynomial satisfied by `c·symbol`, where `c` is the leading coefficient
    /// after clearing denominators; `c` is reported by [`substitution`].
    ///
    /// [`substitution`]: FieldDescriptor::substitution
    pub fn new(symbol: &str, p: &Polynomial<BigRational>) -> Result<Arc<Self>, ArithError> {
        let degree = match p.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ArithError::ConstantModulus),
        };
        if symbol.is_empty() || symbol == "Z" || !symbol.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(ArithError::BadSymbol(symbol.to_string()));
        }
        let int = clear_denominators(p);
        let lead = int.leading_coefficient().expect("nonzero").clone();
        // m(s) = lead^(d-1) * p(s / lead)
        let mut monic = vec![BigInt::zero(); degree + 1];
        let mut scale = BigInt::one();
        for k in (0..degree).rev() {
            monic[k] = int.coeff(k) * &scale;
            scale *= &lead;
        }
        monic[degree] = BigInt::one();
        let modulus = Polynomial::from_coeffs(monic);
        let substitution = if lead.is_negative() { -lead } else { lead };
        let irreducibility = check_irreducible(&modulus)?;
        let label = if degree == 1 && modulus.coeff(0).is_zero() {
            "Q".to_string()
        } else {
            format!("Q({})/{}", symbol, modulus.display_var(symbol)).replace(' ', "")
        };
        Ok(Arc::new(Self {
            modulus_q: modulus.to_rational(),
            modulus,
            symbol: symbol.to_string(),
            label,
            irreducibility,
            substitution,
        }))
    }

    pub fn from_integer_poly(symbol: &str, p: &Polynomial<BigInt>) -> Result<Arc<Self>, ArithError> {
        Self::new(symbol, &p.to_rational())
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    pub fn modulus(&self) -> &Polynomial<BigInt> {
        &self.modulus
    }

    pub fn modulus_rational(&self) -> &Polynomial<BigRational> {
        &self.modulus_q
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// The positive integer `c` such that the stored generator is `c` times a
    /// root of the polynomial originally supplied (1 when no rescaling was
    /// needed).
    pub fn substitution(&self) -> &BigInt {
        &self.substitution
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Rejects reducible monic integer polynomials of degree ≤ 4; larger degrees
/// only get the rational-root test.
fn check_irreducible(m: &Polynomial<BigInt>) -> Result<Irreducibility, ArithError> {
    let d = m.degree().expect("nonconstant");
    if d == 1 {
        return Ok(Irreducibility::Proven);
    }
    match has_integer_root(m) {
        Some(true) => return Err(ArithError::Reducible),
        None => return Ok(Irreducibility::Unchecked),
        Some(false) => {}
    }
    match d {
        2 | 3 => Ok(Irreducibility::Proven),
        4 => match has_quadratic_factor(m) {
            Some(true) => Err(ArithError::Reducible),
            Some(false) => Ok(Irreducibility::Proven),
            None => Ok(Irreducibility::Unchecked),
        },
        _ => Ok(Irreducibility::Unchecked),
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

/// Positive divisors of `n ≠ 0`, or `None` if `|n|` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn has_integer_root(m: &Polynomial<BigInt>) -> Option<bool> {
    let c0 = m.constant_term();
    if c0.is_zero() {
        return Some(true);
    }
    let divs = divisors(&c0)?;
    Some(
        divs.iter()
            .flat_map(|v| [v.clone(), -v])
            .any(|r| m.eval(&r).is_zero()),
    )
}

// (t² + a t + b)(t² + c t + e) = t⁴ + p3 t³ + p2 t² + p1 t + p0
fn has_quadratic_factor(m: &Polynomial<BigInt>) -> Option<bool> {
    let (p0, p1, p2, p3) = (m.coeff(0), m.coeff(1), m.coeff(2), m.coeff(3));
    let divs = divisors(&p0)?;
    for b in divs.iter().flat_map(|v| [v.clone(), -v]) {
        let e = &p0 / &b;
        if e != b {
            let (a, r) = (&p1 - &p3 * &b).div_rem(&(&e - &b));
            if !r.is_zero() {
                continue;
            }
            let c = &p3 - &a;
            if &b + &e + &a * &c == p2 {
                return Some(true);
            }
        } else {
            if p1 != &p3 * &b {
                continue;
            }
            // a + c = p3, a c = p2 - 2b
            let disc = &p3 * &p3 - BigInt::from(4) * (&p2 - BigInt::from(2) * &b);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s == disc && (&p3 + &s).is_even() {
                return Some(true);
            }
        }
    }
    Some(false)
}
