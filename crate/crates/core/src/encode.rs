//! Transport between `K[Z]` and tuples over `ℤ[Z]` through the power basis,
//! and the subrings `ℛ ⊆ K` the tuples are meant to describe.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{minimal_polynomial_of, FieldDescriptor, NumberFieldElement};
use crate::scalar::{Field, Ring};
use crate::{KPoly, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodeError {
    #[error("denominator y must be nonzero")]
    ZeroDenominator,
    #[error("expected {expected} parts, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the field generator is not in {0}")]
    GeneratorNotInRing(String),
    #[error("cannot parse ring {0:?}; expected Z, Q, K, O, Z[1/p,...] or O[1/p,...]")]
    BadRing(String),
}

/// `X = (X₀ + X₁α + ⋯ + X_{d−1}α^{d−1}) / y` in canonical form: `y > 0` and
/// `y` coprime to the content of the parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisTuple {
    pub parts: Vec<ZPoly>,
    pub y: BigInt,
}

impl BasisTuple {
    pub fn is_canonical(&self) -> bool {
        let g = self.parts.iter().fold(self.y.clone(), |g, p| g.gcd(&p.content()));
        self.y.is_positive() && g.is_one()
    }

    /// `["X₀", …, "X_{d−1}", y]`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v: Vec<serde_json::Value> = self
            .parts
            .iter()
            .map(|p| serde_json::Value::String(p.to_string()))
            .collect();
        v.push(serde_json::Value::Number(
            self.y.to_string().parse().expect("integer literal"),
        ));
        serde_json::Value::Array(v)
    }
}

pub fn decompose_basis(x: &KPoly, field: &Arc<FieldDescriptor>) -> BasisTuple {
    let d = field.degree();
    let coords: Vec<Vec<BigRational>> = x.coeffs().iter().map(|c| c.coords_padded(d)).collect();
    let y = coords
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let parts = (0..d)
        .map(|i| {
            ZPoly::from_coeffs(
                coords
                    .iter()
                    .map(|c| (&c[i] * &y).to_integer())
                    .collect(),
            )
        })
        .collect();
    BasisTuple { parts, y }
}

pub fn recombine(b: &BasisTuple, field: &Arc<FieldDescriptor>) -> Result<KPoly, EncodeError> {
    if b.y.is_zero() {
        return Err(EncodeError::ZeroDenominator);
    }
    let d = field.degree();
    if b.parts.len() != d {
        return Err(EncodeError::DimensionMismatch {
            expected: d,
            found: b.parts.len(),
        });
    }
    let len = b.parts.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let coeffs = (0..len)
        .map(|k| {
            let coords = b
                .parts
                .iter()
                .map(|p| BigRational::new(p.coeff(k), b.y.clone()))
                .collect();
            NumberFieldElement::from_coords(field, coords)
        })
        .collect();
    Ok(KPoly::from_coeffs(coeffs))
}

/// Each `k`-tuple over `K[Z]` becomes the `(d+1)·k`-tuple
/// `(X₀, …, X_{d−1}, y)` per entry, order and multiplicity kept.
pub fn transport_set(set: &[Vec<KPoly>], field: &Arc<FieldDescriptor>) -> Vec<Vec<ZPoly>> {
    set.iter()
        .map(|tuple| {
            tuple
                .iter()
                .flat_map(|x| {
                    let b = decompose_basis(x, field);
                    b.parts.into_iter().chain(std::iter::once(ZPoly::constant(b.y)))
                })
                .collect()
        })
        .collect()
}

/// Inverse of [`transport_set`].
pub fn untransport_set(
    set: &[Vec<ZPoly>],
    field: &Arc<FieldDescriptor>,
) -> Result<Vec<Vec<KPoly>>, EncodeError> {
    let width = field.degree() + 1;
    set.iter()
        .map(|tuple| {
            if tuple.len() % width != 0 {
                return Err(EncodeError::DimensionMismatch {
                    expected: width * (tuple.len() / width + 1),
                    found: tuple.len(),
                });
            }
            tuple
                .chunks(width)
                .map(|chunk| {
                    let y = chunk[width - 1].constant_term();
                    if !chunk[width - 1].is_constant() {
                        return Err(EncodeError::ZeroDenominator);
                    }
                    recombine(
                        &BasisTuple {
                            parts: chunk[..width - 1].to_vec(),
                            y,
                        },
                        field,
                    )
                })
                .collect()
        })
        .collect()
}

/// The coefficient ring `ℛ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subring {
    Integers,
    Rationals,
    /// `ℤ[1/p : p ∈ primes]`.
    Localized(Vec<u64>),
    RingOfIntegers,
    /// `𝒪_K[1/p : p ∈ primes]`.
    RingOfIntegersLocalized(Vec<u64>),
    Field,
}

fn only_primes(n: &BigInt, primes: &[u64]) -> bool {
    let mut n = n.abs();
    for &p in primes {
        let p = BigInt::from(p);
        if p <= BigInt::one() {
            continue;
        }
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

impl Subring {
    pub fn contains(&self, beta: &NumberFieldElement) -> bool {
        let denominators_ok = |primes: &[u64]| {
            minimal_polynomial_of(beta)
                .coeffs()
                .iter()
                .all(|c| only_primes(c.denom(), primes))
        };
        match self {
            Subring::Integers => beta.as_integer().is_some(),
            Subring::Rationals => beta.is_rational(),
            Subring::Localized(ps) => beta
                .as_rational()
                .is_some_and(|q| only_primes(q.denom(), ps)),
            Subring::RingOfIntegers => beta.is_algebraic_integer(),
            Subring::RingOfIntegersLocalized(ps) => denominators_ok(ps),
            Subring::Field => true,
        }
    }

    pub fn contains_poly(&self, p: &KPoly) -> bool {
        p.coeffs().iter().all(|c| self.contains(c))
    }

    /// The transport needs a generator `α ∈ ℛ` with `K = ℚ(α)`; only the
    /// field's own generator is tried.
    pub fn check_generator(&self, field: &Arc<FieldDescriptor>) -> Result<(), EncodeError> {
        if field.is_rationals() || self.contains(&NumberFieldElement::generator(field)) {
            Ok(())
        } else {
            Err(EncodeError::GeneratorNotInRing(self.to_string()))
        }
    }
}

impl fmt::Display for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inverted = |ps: &[u64]| {
            ps.iter()
                .map(|p| format!("1/{}", p))
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Subring::Integers => write!(f, "Z"),
            Subring::Rationals => write!(f, "Q"),
            Subring::Localized(ps) => write!(f, "Z[{}]", inverted(ps)),
            Subring::RingOfIntegers => write!(f, "O"),
            Subring::RingOfIntegersLocalized(ps) => write!(f, "O[{}]", inverted(ps)),
            Subring::Field => write!(f, "K"),
        }
    }
}

impl FromStr for Subring {
    type Err = EncodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EncodeError::BadRing(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Z" => return Ok(Subring::Integers),
            "Q" => return Ok(Subring::Rationals),
            "O" => return Ok(Subring::RingOfIntegers),
            "K" => return Ok(Subring::Field),
            _ => {}
        }
        let (base, rest) = compact.split_at(1);
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let primes = inner
            .split(',')
            .map(|t| t.strip_prefix("1/").and_then(|n| n.parse::<u64>().ok()).filter(|&p| p > 1))
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(bad)?;
        match base {
            "Z" => Ok(Subring::Localized(primes)),
            "O" => Ok(Subring::RingOfIntegersLocalized(primes)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_field, parse_poly};

    #[test]
    fn decompose_examples() {
        let qi = parse_field("Q(t)/t^2+1").unwrap();
        let x = parse_poly("(Z+t*Z^2)/3", &qi).unwrap();
        let b = decompose_basis(&x, &qi);
        assert_eq!(b.parts, vec![ZPoly::var(), ZPoly::from_i64s(&[0, 0, 1])]);
        assert_eq!(b.y, BigInt::from(3));
        assert_eq!(recombine(&b, &qi).unwrap(), x);

        let q = FieldDescriptor::rationals();
        let b = decompose_basis(&ZPoly::var().map(|c| NumberFieldElement::from_integer(c.clone())), &q);
        assert_eq!((b.parts.len(), b.y.clone()), (1, BigInt::one()));

        let r5 = parse_field("Q(t)/t^2-5").unwrap();
        let b = decompose_basis(&parse_poly("t/2", &r5).unwrap(), &r5);
        assert_eq!(b.parts, vec![ZPoly::zero(), ZPoly::one()]);
        assert_eq!(b.y, BigInt::from(2));
    }

    #[test]
    fn recombine_zero() {
        let qi = parse_field("Q(t)/t^2+1").unwrap();
        let b = BasisTuple {
            parts: vec![ZPoly::zero(), ZPoly::zero()],
            y: BigInt::one(),
        };
        assert!(recombine(&b, &qi).unwrap().is_zero());
        let b0 = BasisTuple { y: BigInt::zero(), ..b };
        assert_eq!(recombine(&b0, &qi), Err(EncodeError::ZeroDenominator));
    }

    #[test]
    fn transport_examples() {
        let qi = parse_field("Q(i)/i^2+1").unwrap();
        let s = vec![vec![parse_poly("Z", &qi).unwrap()]];
        assert_eq!(
            transport_set(&s, &qi),
            vec![vec![ZPoly::var(), ZPoly::zero(), ZPoly::one()]]
        );
        let s2 = vec![vec![parse_poly("(Z+i*Z^2)/3", &qi).unwrap()]];
        let t = transport_set(&s2, &qi);
        assert_eq!(t[0][2], ZPoly::constant(3.into()));
        assert_eq!(untransport_set(&t, &qi).unwrap(), s2);
        assert!(transport_set(&[], &qi).is_empty());
    }

    #[test]
    fn subrings() {
        let qi = parse_field("Q(i)/i^2+1").unwrap();
        let half_i = parse_poly("i/2", &qi).unwrap().constant_term();
        assert!(!Subring::RingOfIntegers.contains(&half_i));
        assert!(Subring::RingOfIntegersLocalized(vec![2]).contains(&half_i));
        assert!(!Subring::RingOfIntegersLocalized(vec![3]).contains(&half_i));
        assert!(Subring::Localized(vec![2, 3]).contains(&NumberFieldElement::rational(BigRational::new(5.into(), 12.into()))));
        assert!(Subring::Integers.check_generator(&qi).is_err());
        assert!(Subring::RingOfIntegers.check_generator(&qi).is_ok());
        for s in ["Z", "Q", "O", "K", "Z[1/2,1/3]", "O[1/5]"] {
            assert_eq!(s.parse::<Subring>().unwrap().to_string(), s);
        }
        assert!("Z[2]".parse::<Subring>().is_err());
    }
}
