use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::scalar::{fmt_rational, Field, Ring};

/// Dense univariate polynomial in `Z`, constant term first.
///
/// The coefficient vector never has trailing zeros; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * Z^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The indeterminate `Z`.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `Z^n - 1`.
    pub fn z_pow_minus_one(n: usize) -> Self {
        Self::monomial(T::one(), n) - Self::one()
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    /// Index of the lowest nonzero coefficient (`None` for zero).
    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Horner evaluation in another ring, with `embed` mapping coefficients.
    pub fn eval_in<R: Ring>(&self, x: &R, embed: impl Fn(&T) -> R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(x).add_ref(&embed(c)))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// `self mod Z^d`.
    pub fn truncate(&self, d: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(d).cloned().collect())
    }

    /// `self * Z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| if a.is_zero() { T::zero() } else { a.mul_ref(c) })
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        if let Some(k) = self.lowest_order().filter(|&k| k + 1 == self.coeffs.len()) {
            // a monomial: no convolution needed
            let (mut c, mut b, mut n) = (T::one(), self.coeffs[k].clone(), e);
            while n > 0 && !b.is_one() {
                if n & 1 == 1 {
                    c = c.mul_ref(&b);
                }
                n >>= 1;
                if n > 0 {
                    b = b.mul_ref(&b);
                }
            }
            if n > 0 {
                c = c.mul_ref(&b);
            }
            return Self::monomial(c, k * e as usize);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Polynomial<U>> {
        self.coeffs
            .iter()
            .map(f)
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::from_coeffs)
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// The leading coefficient of `divisor` must be a unit of the coefficient
    /// ring (±1 over ℤ, anything nonzero over a field).
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let lead = divisor.leading_coefficient().ok_or(PolyError::ZeroDivisor)?;
        if !lead.is_unit() {
            return Err(PolyError::NonUnitLeading);
        }
        let (q, r) = self.long_division(divisor, true);
        Ok((q.expect("unit leading coefficient"), r))
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in the coefficient ring.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        match self.long_division(divisor, false) {
            (Some(q), r) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.checked_div(self).is_some()
    }

    /// `A ≡ B (mod C)`, i.e. `C | A - B` in the coefficient ring.
    pub fn congruent_mod(a: &Self, b: &Self, c: &Self) -> bool {
        c.divides(&(a - b))
    }

    // Schoolbook division. The quotient is `None` as soon as some leading
    // coefficient is not divisible by the divisor's; the returned remainder is
    // then only meaningful when `full` was requested with a unit divisor.
    fn long_division(&self, divisor: &Self, full: bool) -> (Option<Self>, Self) {
        let dlen = divisor.coeffs.len();
        let lead = &divisor.coeffs[dlen - 1];
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return (Some(Self::zero()), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dlen + 1];
        // inverting a field element is costly, so do it once
        let lead_inv = if lead.is_unit() { T::one().exact_div(lead) } else { None };
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let q = match &lead_inv {
                Some(inv) => Some(top.mul_ref(inv)),
                None => top.exact_div(lead),
            };
            let Some(q) = q else {
                if full {
                    unreachable!("unit leading coefficient divides everything");
                }
                return (None, Self::from_coeffs(rem));
            };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = rem[k + j].sub_ref(&q.mul_ref(dc));
                }
            }
            quot[k] = q;
        }
        rem.truncate(dlen - 1);
        (Some(Self::from_coeffs(quot)), Self::from_coeffs(rem))
    }
}

impl<T: Field> Polynomial<T> {
    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return (if self.is_zero() { other } else { self }).monic();
        }
        // split off the common power of Z, then try the cheap certificate
        let k = self.lowest_order().unwrap_or(0).min(other.lowest_order().unwrap_or(0));
        let a = Self::from_coeffs(self.coeffs[k..].to_vec());
        let b = Self::from_coeffs(other.coeffs[k..].to_vec());
        if a.is_constant() || b.is_constant() || T::certify_coprime(&a.coeffs, &b.coeffs) {
            return Self::one().shift(k);
        }
        a.euclid_gcd(&b).shift(k)
    }

    fn euclid_gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor over a field");
            a = b;
            // monic remainders keep coefficient growth in check
            b = r.monic();
        }
        a
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * other)
            .checked_div(&g)
            .expect("gcd divides the product")
            .monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor over a field");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading_coefficient().and_then(|c| c.inv()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// True iff `gcd(P, P')` is constant. `P` must be nonzero.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// `P / gcd(P, P')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.checked_div(&g).expect("gcd divides").monic()
    }
}

impl Polynomial<BigInt> {
    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.map(|a| a / &c)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let g = self.to_rational().gcd(&other.to_rational());
        let scaled = clear_denominators(&g);
        use num_integer::Integer;
        let content = self.content().gcd(&other.content());
        scaled.primitive_part().scale(&content)
    }

    /// `A·B / gcd(A, B)`, primitive with positive leading coefficient up to
    /// the integer lcm of the contents.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let prod = self * other;
        let g = self.gcd(other);
        let l = prod.checked_div(&g).expect("gcd divides the product");
        if l.leading_coefficient().is_some_and(|c| c.is_negative()) {
            -l
        } else {
            l
        }
    }

    /// Evaluation at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval(x)
    }
}

/// `P * lcm(denominators)`, an integer polynomial.
pub fn clear_denominators(p: &Polynomial<BigRational>) -> Polynomial<BigInt> {
    use num_integer::Integer;
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
}

impl Polynomial<BigRational> {
    /// The polynomial as an integer polynomial, if all coefficients are
    /// integers.
    pub fn to_integer(&self) -> Option<Polynomial<BigInt>> {
        self.try_map(|c| c.is_integer().then(|| c.to_integer()))
    }
}

impl<'a, T: Ring> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c = c.add_ref(s);
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<'a, T: Ring> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<'a, T: Ring> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // sparse monomial factors are common in parsed input
        for (a, b) in [(self, rhs), (rhs, self)] {
            if let Some(k) = a.lowest_order().filter(|&k| k + 1 == a.coeffs.len()) {
                return b.scale(&a.coeffs[k]).shift(k);
            }
        }
        Polynomial::from_coeffs(T::convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Ring> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Ring> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Ring> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<T: Ring> Ring for Polynomial<T> {
    fn from_integer(n: BigInt) -> Self {
        Polynomial::constant(T::from_integer(n))
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor)
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_unit()
    }

    fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => self.coeffs[0].as_rational(),
            _ => None,
        }
    }

    fn render_irrational(&self) -> String {
        format!("({})", self)
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
}

impl<T: Ring> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text: descending powers, e.g. `Z^3 - 1`, `(1/2)*Z^2 + (0+1*a)`.
impl<T: Ring> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_var("Z").fmt(f)
    }
}

impl<T: Ring> Polynomial<T> {
    /// Canonical text with `var` as the indeterminate.
    pub fn display_var<'a>(&'a self, var: &'a str) -> VarDisplay<'a, T> {
        VarDisplay { poly: self, var }
    }
}

pub struct VarDisplay<'a, T> {
    poly: &'a Polynomial<T>,
    var: &'a str,
}

impl<T: Ring> fmt::Display for VarDisplay<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let this = self.poly;
        if this.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in this.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = match c.as_rational() {
                Some(q) => {
                    let mag = q.abs();
                    let body = if k > 0 && mag.is_one() {
                        String::new()
                    } else if mag.is_integer() || k == 0 {
                        fmt_rational(&mag)
                    } else {
                        format!("({})", fmt_rational(&mag))
                    };
                    (q.is_negative(), body)
                }
                None => (false, c.render_irrational()),
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            f.write_str(&body)?;
            if k > 0 {
                if !body.is_empty() {
                    f.write_str("*")?;
                }
                f.write_str(self.var)?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type ZPoly = Polynomial<BigInt>;
    type QPoly = Polynomial<BigRational>;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn divmod_examples() {
        // Z^2+1 by Z^3
        let (qq, r) = z(&[1, 0, 1]).divmod(&z(&[0, 0, 0, 1])).unwrap();
        assert!(qq.is_zero());
        assert_eq!(r, z(&[1, 0, 1]));
        // Z^3-1 by Z-1
        let (qq, r) = z(&[-1, 0, 0, 1]).divmod(&z(&[-1, 1])).unwrap();
        assert_eq!(qq, z(&[1, 1, 1]));
        assert!(r.is_zero());
        // Z^2+3 by -Z+1
        let (qq, r) = z(&[3, 0, 1]).divmod(&z(&[1, -1])).unwrap();
        assert_eq!(qq, z(&[-1, -1]));
        assert_eq!(r, z(&[4]));
    }

    #[test]
    fn divmod_errors() {
        assert_eq!(
            z(&[1, 0, 1]).divmod(&z(&[1, 2])),
            Err(PolyError::NonUnitLeading)
        );
        assert_eq!(z(&[1]).divmod(&ZPoly::zero()), Err(PolyError::ZeroDivisor));
        assert!(q(&[1, 0, 1]).divmod(&q(&[1, 2])).is_ok());
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 0, 0, 1])), q(&[-1, 1]));
        assert_eq!(z(&[-1, 0, 1]).gcd(&z(&[-1, 0, 0, 1])), z(&[-1, 1]));
        assert_eq!(z(&[-1, 0, 0, 1]).lcm(&z(&[-1, 1])), z(&[-1, 0, 0, 1]));
        assert_eq!(z(&[2, -4, -6]).gcd(&ZPoly::zero()), z(&[-2, 4, 6]));
        assert_eq!(q(&[2, -4, -6]).gcd(&QPoly::zero()), QPoly::from_coeffs(vec![
            BigRational::new((-1).into(), 3.into()),
            BigRational::new(2.into(), 3.into()),
            BigRational::one(),
        ]));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(z(&[1, 2, 3]).truncate(2), z(&[1, 2]));
        assert!(z(&[1, 2, 3]).truncate(0).is_zero());
        assert_eq!(z(&[1, 0, -1, 0, 1]).truncate(4), z(&[1, 0, -1]));
    }

    #[test]
    fn congruence_examples() {
        assert!(ZPoly::congruent_mod(&z(&[0, 0, 0, 0, 1]), &z(&[1]), &z(&[-1, 0, 1])));
        assert!(ZPoly::congruent_mod(&z(&[3, 1]), &z(&[3, 1]), &z(&[5, 0, 7])));
        assert!(!ZPoly::congruent_mod(&z(&[0, 1]), &z(&[1]), &z(&[0, 0, 1])));
        // non-unit leading coefficient over Z: 2Z+2 = 2(Z+1), but Z+1 ∤ 2 over Z[Z]... (Z+1)
        assert!(ZPoly::congruent_mod(&z(&[2, 2]), &z(&[0]), &z(&[2, 2])));
        assert!(!ZPoly::congruent_mod(&z(&[1, 1]), &z(&[0]), &z(&[2, 2])));
    }

    #[test]
    fn squarefree_examples() {
        assert!(q(&[-1, 0, 1]).is_squarefree());
        assert!(!q(&[1, -2, 1]).is_squarefree());
        assert!(q(&[-1, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(z(&[-1, 0, 0, 1]).to_string(), "Z^3 - 1");
        assert_eq!(z(&[1, -1, 1]).to_string(), "Z^2 - Z + 1");
        assert_eq!(z(&[0, -3]).to_string(), "-3*Z");
        assert_eq!(ZPoly::zero().to_string(), "0");
        let half = QPoly::from_coeffs(vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
        ]);
        assert_eq!(half.to_string(), "(1/2)*Z^2 - 1/2");
    }

    #[test]
    fn xgcd_bezout() {
        let a = q(&[1, 0, 1]);
        let b = q(&[-1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
