use num_bigint::BigInt;
use num_rational::BigRational;

use super::SpecialError;
use crate::poly::{Polynomial, RationalFunction};
use crate::scalar::Ring;
use crate::ZPoly;

/// `(Xₙ, Yₙ)` with `Xₙ + √(Z²−1)·Yₙ = (Z + √(Z²−1))ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPair {
    pub n: i64,
    pub x: ZPoly,
    pub y: ZPoly,
}

impl ChebPair {
    /// `Xₙ² − (Z²−1)·Yₙ²`, which is always 1.
    pub fn pell_value(&self) -> ZPoly {
        let w = ZPoly::from_i64s(&[-1, 0, 1]);
        &(&self.x * &self.x) - &(&w * &(&self.y * &self.y))
    }
}

pub fn chebyshev_pair(n: i64) -> ChebPair {
    let (x, y) = chebyshev_at(n, &ZPoly::var());
    ChebPair { n, x, y }
}

/// `(Xₙ(t), Yₙ(t))` in any ring, by the three-term recurrence
/// `X_{k+1} = 2t·X_k − X_{k−1}` (same for `Y`), reflected for `n < 0`.
pub fn chebyshev_at<R: Ring>(n: i64, t: &R) -> (R, R) {
    let two_t = t.mul_ref(&R::from_i64(2));
    let (mut x0, mut x1) = (R::one(), t.clone());
    let (mut y0, mut y1) = (R::zero(), R::one());
    let m = n.unsigned_abs();
    if m == 0 {
        return (x0, y0);
    }
    for _ in 1..m {
        let x2 = two_t.mul_ref(&x1).sub_ref(&x0);
        let y2 = two_t.mul_ref(&y1).sub_ref(&y0);
        x0 = std::mem::replace(&mut x1, x2);
        y0 = std::mem::replace(&mut y1, y2);
    }
    if n < 0 {
        (x1, -y1)
    } else {
        (x1, y1)
    }
}

/// Signed index and sign of `X` when `X = ±Xₙ(T)`, `Y = Yₙ(T)`.
///
/// Returns `Ok(None)` when the Pell equation `X² − (T²−1)Y² = 1` fails or no
/// index matches.
pub fn pell_recognize<T: Ring>(
    t: &Polynomial<T>,
    x: &Polynomial<T>,
    y: &Polynomial<T>,
) -> Result<Option<(i64, i8)>, SpecialError> {
    let deg_t = match t.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(SpecialError::ConstantModulus),
    };
    let one = Polynomial::<T>::one();
    let w = &(t * t) - &one;
    if &(x * x) - &(&w * &(y * y)) != one {
        return Ok(None);
    }
    let deg_x = x.degree().expect("Pell forces X ≠ 0");
    if deg_x % deg_t != 0 {
        return Ok(None);
    }
    let n = (deg_x / deg_t) as i64;
    let (xn, yn) = chebyshev_at(n, t);
    let neg_xn = -&xn;
    for (index, ycand) in [(n, &yn), (-n, &-&yn)] {
        if y != ycand {
            continue;
        }
        if x == &xn {
            return Ok(Some((index, 1)));
        }
        if x == &neg_xn {
            return Ok(Some((index, -1)));
        }
    }
    Ok(None)
}

/// Checks `Zⁿ = Xₙ(V) + U·Yₙ(V)` in `ℚ(Z)`, `V = (Z+Z⁻¹)/2`, `U = (Z−Z⁻¹)/2`.
pub fn verify_cheb_power(n: i64) -> bool {
    type QRat = RationalFunction<BigRational>;
    let half = QRat::constant(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let z = QRat::var();
    let zinv = QRat::z_pow(-1);
    let v = &half * &(&z + &zinv);
    let u = &half * &(&z - &zinv);
    let (x, y) = chebyshev_at(n, &v);
    QRat::z_pow(n) == &x + &(&u * &y)
}

/// `Yₙ(1) = n`, the fact behind the degree witness.
pub fn y_at_one(n: i64) -> BigInt {
    chebyshev_pair(n).y.eval(&BigInt::from(1))
}
