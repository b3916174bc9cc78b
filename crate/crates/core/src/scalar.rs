//! Coefficient traits shared by every polynomial and rational-function type.
//!
//! All arithmetic in this crate is exact. A [`Ring`] is a commutative ring of
//! characteristic zero that contains ℤ; a [`Field`] is a number field (ℚ or an
//! extension of it). Concrete instances are `BigInt`, `BigRational`,
//! [`NumberFieldElement`](crate::arith::NumberFieldElement) and rational
//! functions over a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_integer(n: BigInt) -> Self;

    /// `Some(q)` with `divisor * q == self`, if such `q` exists in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    fn is_unit(&self) -> bool;

    /// The value as a rational number, if it is one.
    fn as_rational(&self) -> Option<BigRational>;

    /// Text for a coefficient that is not rational. Must be self-delimiting.
    fn render_irrational(&self) -> String {
        format!("({:?})", self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    /// Coefficients of the product of two nonempty coefficient vectors.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
                }
            }
        }
        out
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }
}

/// A number field scalar: ℚ or a finite extension of it.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: BigRational) -> Self;

    /// True iff the monic minimal polynomial over ℚ has integer coefficients.
    fn is_algebraic_integer(&self) -> bool;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    /// True only when the two coefficient vectors are certainly coprime as
    /// polynomials; `false` means unknown.
    fn certify_coprime(_a: &[Self], _b: &[Self]) -> bool {
        false
    }
}

impl Ring for BigInt {
    fn from_integer(n: BigInt) -> Self {
        n
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.clone()))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn as_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }

    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        int_convolve(a, b)
    }
}

pub(crate) fn int_convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Integer numerators over one common denominator.
pub(crate) fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

impl Ring for BigRational {
    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    // one gcd per output coefficient instead of one per product
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (na, da) = clear_denominators(a);
        let (nb, db) = clear_denominators(b);
        let den = da * db;
        int_convolve(&na, &nb)
            .into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }
}

impl Field for BigRational {
    fn certify_coprime(a: &[Self], b: &[Self]) -> bool {
        let sa: Vec<&[BigRational]> = a.iter().map(std::slice::from_ref).collect();
        let sb: Vec<&[BigRational]> = b.iter().map(std::slice::from_ref).collect();
        let t = [BigInt::zero(), BigInt::one()];
        crate::poly::modular::certify_coprime(&sa, &sb, &t)
    }

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn is_algebraic_integer(&self) -> bool {
        self.is_integer()
    }
}

/// Rational formatting used by every text format: `p` or `p/q`.
pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_exact_division() {
        let six = BigInt::from(6);
        assert_eq!(six.exact_div(&BigInt::from(-3)), Some(BigInt::from(-2)));
        assert_eq!(six.exact_div(&BigInt::from(4)), None);
        assert_eq!(six.exact_div(&BigInt::zero()), None);
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(2).is_unit());
    }

    #[test]
    fn rational_field_ops() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.inv(), Some(BigRational::from_integer(2.into())));
        assert!(!half.is_algebraic_integer());
        assert_eq!(half.as_integer(), None);
        assert_eq!(fmt_rational(&-half), "-1/2");
    }
}
