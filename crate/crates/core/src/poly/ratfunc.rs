use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial};
use crate::scalar::{Field, Ring};

/// A value of a discrete valuation: an integer or `+∞` (for zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Field> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.checked_div(&g).expect("gcd divides");
        let den = den.checked_div(&g).expect("gcd divides");
        let lc = den.leading_coefficient().expect("nonzero").inv().expect("nonzero");
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The variable `Z`.
    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    /// `Z^k` for any integer `k`.
    pub fn z_pow(k: i64) -> Self {
        let m = Polynomial::monomial(T::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            Self {
                num: Polynomial::one(),
                den: m,
            }
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial<T>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Order of vanishing at `Z = 0`.
    pub fn v_z(&self) -> Valuation {
        match (self.num.lowest_order(), self.den.lowest_order()) {
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            _ => Valuation::Infinity,
        }
    }

    /// `deg(den) - deg(num)`.
    pub fn v_zinf(&self) -> Valuation {
        match (self.num.degree(), self.den.degree()) {
            (Some(a), Some(b)) => Valuation::Finite(b as i64 - a as i64),
            _ => Valuation::Infinity,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).ok()?;
        Some(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl<'a, T: Field> Add<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    // Henrici's form: only gcds of denominators and of the final numerator
    // with their common part are needed, and the result is already reduced.
    fn add(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            return RationalFunction {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            };
        }
        let da = exact(&self.den, &g);
        let db = exact(&rhs.den, &g);
        let t = &(&self.num * &db) + &(&rhs.num * &da);
        if t.is_zero() {
            return RationalFunction::zero();
        }
        let g2 = t.gcd(&g);
        RationalFunction {
            num: exact(&t, &g2),
            den: &(&da * &db) * &exact(&g, &g2),
        }
    }
}

fn exact<T: Field>(a: &Polynomial<T>, b: &Polynomial<T>) -> Polynomial<T> {
    if b.is_one() {
        return a.clone();
    }
    a.checked_div(b).expect("exact division by a gcd")
}

impl<'a, T: Field> Sub<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<'a, T: Field> Mul<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel: both factors are already reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        RationalFunction {
            num: &exact(&self.num, &g1) * &exact(&rhs.num, &g2),
            den: &exact(&self.den, &g2) * &exact(&rhs.den, &g1),
        }
    }
}

impl<T: Field> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Field> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for RationalFunction<T> {
            type Output = RationalFunction<T>;

            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Field> Zero for RationalFunction<T> {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Field> One for RationalFunction<T> {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl<T: Field> Ring for RationalFunction<T> {
    fn from_integer(n: BigInt) -> Self {
        Self::constant(T::from_integer(n))
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor)
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn as_rational(&self) -> Option<BigRational> {
        if !self.is_polynomial() || !self.num.is_constant() {
            return None;
        }
        self.num.constant_term().as_rational()
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

impl<T: Field> fmt::Debug for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
impl<T: Field> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
