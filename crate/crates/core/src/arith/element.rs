use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldDescriptor;
use crate::poly::Polynomial;
use crate::scalar::{clear_denominators, fmt_rational, Field, Ring};

/// An element of `K = ℚ[t]/(m(t))` in the power basis `1, t, …, t^{d−1}`.
///
/// Elements without a field attached are rational constants; they adopt the
/// field of whatever they are combined with. Combining elements of two
/// different fields panics.
#[derive(Clone)]
pub struct NumberFieldElement {
    coords: Vec<BigRational>,
    field: Option<Arc<FieldDescriptor>>,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn merge(
    a: &Option<Arc<FieldDescriptor>>,
    b: &Option<Arc<FieldDescriptor>>,
) -> Option<Arc<FieldDescriptor>> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert!(
                Arc::ptr_eq(x, y) || x == y,
                "elements of different fields: {} and {}",
                x,
                y
            );
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl NumberFieldElement {
    pub fn rational(q: BigRational) -> Self {
        Self {
            coords: trim(vec![q]),
            field: None,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// The generator `t` of `field`.
    pub fn generator(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_coords(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// Reduces `coords` (any length) modulo the defining polynomial.
    pub fn from_coords(field: &Arc<FieldDescriptor>, coords: Vec<BigRational>) -> Self {
        Self {
            coords: reduce(field, coords),
            field: Some(field.clone()),
        }
    }

    pub fn from_poly(field: &Arc<FieldDescriptor>, p: &Polynomial<BigRational>) -> Self {
        Self::from_coords(field, p.coeffs().to_vec())
    }

    /// Attaches `field` to a field-less constant (no-op otherwise).
    pub fn in_field(mut self, field: &Arc<FieldDescriptor>) -> Self {
        self.field = merge(&self.field, &Some(field.clone()));
        self.coords = reduce(field, std::mem::take(&mut self.coords));
        self
    }

    pub fn field(&self) -> Option<&Arc<FieldDescriptor>> {
        self.field.as_ref()
    }

    /// Nonzero-trimmed power-basis coordinates.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// All `d` coordinates, including trailing zeros.
    pub fn coords_padded(&self, d: usize) -> Vec<BigRational> {
        let mut v = self.coords.clone();
        v.resize(d.max(v.len()), BigRational::zero());
        v
    }

    /// The element as a polynomial in the generator.
    pub fn as_poly(&self) -> Polynomial<BigRational> {
        Polynomial::from_coeffs(self.coords.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.len() <= 1
    }

    fn binary(&self, rhs: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let n = self.coords.len().max(rhs.coords.len());
        let zero = BigRational::zero();
        let coords = (0..n)
            .map(|i| {
                op(
                    self.coords.get(i).unwrap_or(&zero),
                    rhs.coords.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self {
            coords: trim(coords),
            field: merge(&self.field, &rhs.field),
        }
    }
}

fn reduce(field: &FieldDescriptor, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let m = field.modulus();
    let d = field.degree();
    while c.len() > d {
        let top = c.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = c.len() - d;
        for (i, mi) in m.coeffs().iter().take(d).enumerate() {
            if !mi.is_zero() {
                c[base + i] -= &top * BigRational::from_integer(mi.clone());
            }
        }
    }
    trim(c)
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.field, &other.field) {
            if !Arc::ptr_eq(a, b) && a != b {
                return false;
            }
        }
        self.coords == other.coords
    }
}

impl Eq for NumberFieldElement {}

impl Hash for NumberFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl Add for NumberFieldElement {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.binary(&rhs, |a, b| a + b)
    }
}

impl Sub for NumberFieldElement {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.binary(&rhs, |a, b| a - b)
    }
}

impl Mul for NumberFieldElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for NumberFieldElement {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            coords: self.coords.into_iter().map(|c| -c).collect(),
            field: self.field,
        }
    }
}

impl Zero for NumberFieldElement {
    fn zero() -> Self {
        Self {
            coords: Vec::new(),
            field: None,
        }
    }

    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl One for NumberFieldElement {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Ring for NumberFieldElement {
    fn from_integer(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    // Polynomials over K as integer grids in (Z, t) over one denominator,
    // reduced modulo the monic defining polynomial once per coefficient.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut field = None;
        for c in a.iter().chain(b) {
            field = merge(&field, &c.field);
        }
        let Some(field) = field.filter(|f| f.degree() > 1) else {
            let ra: Vec<BigRational> = a.iter().map(|c| c.coords_padded(1).swap_remove(0)).collect();
            let rb: Vec<BigRational> = b.iter().map(|c| c.coords_padded(1).swap_remove(0)).collect();
            let f = a.iter().chain(b).find_map(|c| c.field.clone());
            return BigRational::convolve(&ra, &rb)
                .into_iter()
                .map(|q| Self {
                    coords: trim(vec![q]),
                    field: f.clone(),
                })
                .collect();
        };
        let d = field.degree();
        let flat = |v: &[Self]| -> Vec<BigRational> { v.iter().flat_map(|c| c.coords_padded(d)).collect() };
        let (na, da) = clear_denominators(&flat(a));
        let (nb, db) = clear_denominators(&flat(b));
        let den = da * db;
        let width = 2 * d - 1;
        let mut grid = vec![BigInt::zero(); (a.len() + b.len() - 1) * width];
        for (ia, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i, k) = (ia / d, ia % d);
            for (jb, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    let (j, l) = (jb / d, jb % d);
                    grid[(i + j) * width + k + l] += x * y;
                }
            }
        }
        let m = field.modulus().coeffs();
        grid.chunks_mut(width)
            .map(|c| {
                for top in (d..width).rev() {
                    let t = std::mem::take(&mut c[top]);
                    if t.is_zero() {
                        continue;
                    }
                    for (i, mi) in m.iter().take(d).enumerate() {
                        if !mi.is_zero() {
                            c[top - d + i] -= &t * mi;
                        }
                    }
                }
                let coords = c[..d].iter().map(|n| BigRational::new(n.clone(), den.clone())).collect();
                Self {
                    coords: trim(coords),
                    field: Some(field.clone()),
                }
            })
            .collect()
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div_ref(divisor)
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn as_rational(&self) -> Option<BigRational> {
        match self.coords.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    fn render_irrational(&self) -> String {
        let (d, sym) = match &self.field {
            Some(f) => (f.degree(), f.symbol().to_string()),
            None => (1, "a".to_string()),
        };
        let mut s = String::from("(");
        for (i, c) in self.coords_padded(d).iter().enumerate() {
            if i == 0 {
                s.push_str(&fmt_rational(c));
                continue;
            }
            s.push(if c.is_negative() { '-' } else { '+' });
            s.push_str(&fmt_rational(&c.abs()));
            s.push('*');
            s.push_str(&sym);
            if i > 1 {
                s.push_str(&format!("^{}", i));
            }
        }
        s.push(')');
        s
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| a + b)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| a - b)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let field = merge(&self.field, &rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return Self {
                coords: Vec::new(),
                field,
            };
        }
        let mut c = vec![BigRational::zero(); self.coords.len() + rhs.coords.len() - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        let coords = match &field {
            Some(f) => reduce(f, c),
            None => trim(c),
        };
        Self { coords, field }
    }
}

impl Field for NumberFieldElement {
    fn certify_coprime(a: &[Self], b: &[Self]) -> bool {
        let mut field = None;
        for c in a.iter().chain(b) {
            field = merge(&field, &c.field);
        }
        let t = [BigInt::zero(), BigInt::one()];
        let modulus = field.as_ref().map_or(&t[..], |f| f.modulus().coeffs());
        let sa: Vec<&[BigRational]> = a.iter().map(|c| c.coords()).collect();
        let sb: Vec<&[BigRational]> = b.iter().map(|c| c.coords()).collect();
        crate::poly::modular::certify_coprime(&sa, &sb, modulus)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self {
                coords: vec![q.recip()],
                field: self.field.clone(),
            });
        }
        let field = self.field.as_ref().expect("irrational element carries a field");
        let (g, s, _) = self.as_poly().xgcd(field.modulus_rational());
        assert!(g.is_one(), "defining polynomial is not irreducible");
        Some(Self::from_poly(field, &s))
    }

    fn from_rational(q: BigRational) -> Self {
        Self::rational(q)
    }

    fn is_algebraic_integer(&self) -> bool {
        super::minimal_polynomial_of(self)
            .coeffs()
            .iter()
            .all(|c| c.is_integer())
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p/q` for rational values, `(c0+c1*a+...)` otherwise.
impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => f.write_str(&fmt_rational(&q)),
            None => f.write_str(&self.render_irrational()),
        }
    }
}
