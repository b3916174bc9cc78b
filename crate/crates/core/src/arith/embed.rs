//! Certified complex embeddings of a number field.
//!
//! Roots of the defining polynomial are approximated by Aberth iteration in
//! `f64`, polished by Durand–Kerner steps on dyadic rationals, and certified
//! with Gerschgorin disks of the companion-like matrix
//! `diag(z) − W·1ᵀ`, `Wᵢ = p(zᵢ) / ∏_{j≠i}(zᵢ − zⱼ)`, whose characteristic
//! polynomial is `p`. Pairwise disjoint disks each hold exactly one root.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{ArithError, FieldDescriptor, NumberFieldElement};
use crate::poly::Polynomial;
use crate::scalar::Ring;

pub const MIN_PRECISION: u64 = 16;
pub const START_PRECISION: u64 = 64;
pub const MAX_PRECISION: u64 = 4096;

/// A closed disk in ℂ with dyadic center and radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigRational,
    im: BigRational,
    radius: BigRational,
}

impl ComplexBall {
    pub fn new(re: BigRational, im: BigRational, radius: BigRational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Self { re, im, radius }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True iff the two closed disks do not meet.
    pub fn disjoint(&self, other: &Self) -> bool {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let r = &self.radius + &other.radius;
        &dr * &dr + &di * &di > &r * &r
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        let dr = &self.re - re;
        let di = &self.im - im;
        &dr * &dr + &di * &di <= &self.radius * &self.radius
    }

    /// The disk lies strictly above the real axis.
    pub fn in_upper_half(&self) -> bool {
        self.im > self.radius
    }

    pub fn in_lower_half(&self) -> bool {
        -&self.im > self.radius
    }
}

/// Exact complex rational.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn round(&self, bits: u64) -> Self {
        Self::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_f64(z.re)?,
            BigRational::from_f64(z.im)?,
        ))
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Nearest dyadic with denominator `2^bits`.
pub(crate) fn round_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigRational::from_integer(pow2(bits));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    BigRational::new((x * &scale + half).floor().to_integer(), pow2(bits))
}

/// Smallest dyadic `≥ x` with denominator `2^bits`.
pub(crate) fn ceil_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigRational::from_integer(pow2(bits));
    BigRational::new((x * scale).ceil().to_integer(), pow2(bits))
}

/// Upper bound for `√x` (`x ≥ 0`) within `2^{-bits}`.
pub(crate) fn sqrt_up(x: &BigRational, bits: u64) -> BigRational {
    let n = (x * BigRational::from_integer(pow2(2 * bits))).ceil().to_integer();
    let mut r = n.sqrt();
    if &r * &r < n {
        r += 1;
    }
    BigRational::new(r, pow2(bits))
}

/// Lower bound for `√x` (`x ≥ 0`) within `2^{-bits}`.
pub(crate) fn sqrt_down(x: &BigRational, bits: u64) -> BigRational {
    let n = (x * BigRational::from_integer(pow2(2 * bits))).floor().to_integer();
    BigRational::new(n.sqrt(), pow2(bits))
}

pub(crate) fn eval_c(p: &Polynomial<BigRational>, z: &CRat) -> CRat {
    p.coeffs()
        .iter()
        .rev()
        .fold(CRat::zero(), |acc, c| acc.mul(z).add(&CRat::real(c.clone())))
}

/// Certified isolating disks for the `d` complex roots of the defining
/// polynomial, each of radius at most `2^{-precision_bits}`.
pub fn embeddings(
    field: &FieldDescriptor,
    precision_bits: u64,
) -> Result<Vec<ComplexBall>, ArithError> {
    if precision_bits < MIN_PRECISION {
        return Err(ArithError::PrecisionTooLow(precision_bits));
    }
    let p = field.modulus_rational();
    let n = field.degree();
    if n == 1 {
        let root = -p.coeff(0);
        let re = round_dyadic(&root, precision_bits + 1);
        let radius = ceil_dyadic(&(&root - &re).abs(), precision_bits + 1);
        return Ok(vec![ComplexBall::new(re, BigRational::zero(), radius)]);
    }
    if !p.is_squarefree() {
        return Err(ArithError::IsolationFailure);
    }
    let target = BigRational::new(BigInt::one(), pow2(precision_bits));
    let mut prec = START_PRECISION;
    let mut z: Vec<Fixed> = initial_roots(p)
        .iter()
        .map(|c| Fixed::from_crat(c, prec))
        .collect();
    loop {
        polish(p, &mut z, prec);
        let cert_bits = prec.max(precision_bits + 4);
        if let Some(balls) = certify(field.modulus(), &z, prec, cert_bits) {
            if balls.iter().all(|b| b.radius <= target) {
                return Ok(balls);
            }
        }
        if prec >= MAX_PRECISION {
            return Err(ArithError::IsolationFailure);
        }
        let next = (prec * 2).min(MAX_PRECISION);
        for w in z.iter_mut() {
            *w = w.rescale(prec, next);
        }
        prec = next;
    }
}

/// Complex fixed-point value `(re + i·im) / 2^prec`.
#[derive(Debug, Clone)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn from_crat(c: &CRat, prec: u64) -> Self {
        let scale = BigRational::from_integer(pow2(prec));
        Self {
            re: (&c.re * &scale).round().to_integer(),
            im: (&c.im * &scale).round().to_integer(),
        }
    }

    fn rescale(&self, from: u64, to: u64) -> Self {
        Self {
            re: &self.re << (to - from),
            im: &self.im << (to - from),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self, prec: u64) -> Self {
        Self {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec,
        }
    }

    fn div(&self, o: &Self, prec: u64) -> Option<Self> {
        let norm = &o.re * &o.re + &o.im * &o.im;
        if norm.is_zero() {
            return None;
        }
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        Some(Self {
            re: (re << prec) / &norm,
            im: (im << prec) / norm,
        })
    }

    fn magnitude_bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// Durand–Kerner iterations in fixed point until the corrections stop
/// shrinking or fall below a few ulps.
fn polish(p: &Polynomial<BigRational>, z: &mut [Fixed], prec: u64) {
    let scale = BigRational::from_integer(pow2(prec));
    let coeffs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * &scale).round().to_integer())
        .collect();
    let n = z.len();
    let one = Fixed {
        re: pow2(prec),
        im: BigInt::zero(),
    };
    let mut previous = u64::MAX;
    for _ in 0..200 {
        let mut largest = 0;
        for i in 0..n {
            let value = coeffs.iter().rev().fold(
                Fixed {
                    re: BigInt::zero(),
                    im: BigInt::zero(),
                },
                |acc, c| {
                    let mut next = acc.mul(&z[i], prec);
                    next.re += c;
                    next
                },
            );
            let mut den = one.clone();
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]), prec);
                }
            }
            match value.div(&den, prec) {
                Some(w) => {
                    largest = largest.max(w.magnitude_bits());
                    z[i] = z[i].sub(&w);
                }
                None => {
                    z[i].re += BigInt::from(i as u64 + 1) << (prec / 2);
                    z[i].im += BigInt::one() << (prec / 2);
                    largest = u64::MAX;
                }
            }
        }
        if largest <= 8 || (largest >= previous && previous < prec / 2) {
            break;
        }
        previous = largest;
    }
}

fn initial_roots(p: &Polynomial<BigRational>) -> Vec<CRat> {
    let n = p.degree().expect("nonconstant");
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let cauchy = 1.0
        + coeffs[..n]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let start: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(cauchy.min(1e6), theta)
        })
        .collect();
    let refined = if coeffs.iter().all(|c| c.is_finite()) {
        aberth(&coeffs, start.clone())
    } else {
        None
    };
    refined
        .unwrap_or(start)
        .into_iter()
        .map(|z| CRat::from_c64(z).unwrap_or_else(CRat::zero).round(START_PRECISION))
        .collect()
}

fn aberth(coeffs: &[f64], mut z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = z.len();
    let horner = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            if step.norm() > 1e-15 * z[k].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z.iter().all(|w| w.is_finite()).then_some(z)
}

/// Gerschgorin disks for the approximations `z` (scale `2^prec`), with
/// centers and radii on the grid `2^{-bits}`, `bits ≥ prec`. All arithmetic is
/// on exact Gaussian integers.
fn certify(m: &Polynomial<BigInt>, z: &[Fixed], prec: u64, bits: u64) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let mut centers = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        // p(z_i) · 2^{prec·n}
        let mut value = Fixed {
            re: BigInt::one(),
            im: BigInt::zero(),
        };
        for k in (0..n).rev() {
            value = value.mul(&z[i], 0);
            value.re += m.coeff(k) << (prec * (n - k) as u64);
        }
        // ∏ (z_i − z_j) · 2^{prec·(n−1)}
        let mut den = Fixed {
            re: BigInt::one(),
            im: BigInt::zero(),
        };
        for j in 0..n {
            if j != i {
                den = den.mul(&z[i].sub(&z[j]), 0);
            }
        }
        let den_norm = &den.re * &den.re + &den.im * &den.im;
        if den_norm.is_zero() {
            return None;
        }
        // W_i · 2^bits, truncated toward zero
        let num_re = &value.re * &den.re + &value.im * &den.im;
        let num_im = &value.im * &den.re - &value.re * &den.im;
        let scale = bits - prec;
        let denom = &den_norm << prec;
        let w_re = (&num_re << scale) / &denom;
        let w_im = (&num_im << scale) / &denom;
        // ⌈|W_i| · 2^bits⌉
        let value_norm = &value.re * &value.re + &value.im * &value.im;
        let ratio = &value_norm << (2 * scale);
        let denom_sq = &den_norm << (2 * prec);
        let mut sq = &ratio / &denom_sq;
        if &sq * &denom_sq < ratio {
            sq += 1;
        }
        let mut abs_w = sq.sqrt();
        if &abs_w * &abs_w < sq {
            abs_w += 1;
        }
        centers.push((
            (&z[i].re << scale) - w_re,
            (&z[i].im << scale) - w_im,
        ));
        // truncation moved the center by less than √2 grid steps
        radii.push(abs_w * BigInt::from(n as u64 - 1) + BigInt::from(2));
    }
    for i in 0..n {
        for j in i + 1..n {
            let dr = &centers[i].0 - &centers[j].0;
            let di = &centers[i].1 - &centers[j].1;
            let r = &radii[i] + &radii[j];
            if &dr * &dr + &di * &di <= &r * &r {
                return None;
            }
        }
    }
    let grid = pow2(bits);
    Some(
        centers
            .into_iter()
            .zip(radii)
            .map(|((re, im), r)| {
                ComplexBall::new(
                    BigRational::new(re, grid.clone()),
                    BigRational::new(im, grid.clone()),
                    BigRational::new(r, grid.clone()),
                )
            })
            .collect(),
    )
}

/// Three-valued answer from a certified numerical test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    Undecided,
}

/// Whether `|σ(β)| ≤ bound` for every complex embedding `σ`.
pub fn abs_bound_leq(beta: &NumberFieldElement, bound: &BigRational) -> TriState {
    if bound.is_negative() {
        return TriState::False;
    }
    let field = match (beta.as_rational(), beta.field()) {
        (Some(q), _) => return bool_state(q.abs() <= *bound),
        (None, Some(f)) => f.clone(),
        (None, None) => unreachable!("irrational element carries a field"),
    };
    if field.degree() == 2 && real_root_count(field.modulus_rational()) == 0 {
        // both embeddings are conjugate, so |σ(β)|² is the norm
        let norm = super::minimal_polynomial_of(beta).coeff(0);
        return bool_state(norm <= bound * bound);
    }
    let poly = beta.as_poly();
    let mut prec = START_PRECISION;
    loop {
        let Ok(balls) = embeddings(&field, prec) else {
            return TriState::Undecided;
        };
        let mut all_within = true;
        for ball in &balls {
            let (center, radius) = eval_ball(&poly, ball, prec);
            let abs_hi = sqrt_up(&center.norm_sq(), prec) + &radius;
            let abs_lo = sqrt_down(&center.norm_sq(), prec) - &radius;
            if abs_lo > *bound {
                return TriState::False;
            }
            if abs_hi > *bound {
                all_within = false;
            }
        }
        if all_within {
            return TriState::True;
        }
        if prec >= MAX_PRECISION {
            return TriState::Undecided;
        }
        prec *= 2;
    }
}

fn bool_state(b: bool) -> TriState {
    if b {
        TriState::True
    } else {
        TriState::False
    }
}

/// Ball enclosing `p(x)` for all `x` in `ball`.
fn eval_ball(p: &Polynomial<BigRational>, ball: &ComplexBall, prec: u64) -> (CRat, BigRational) {
    let c = CRat::new(ball.re.clone(), ball.im.clone());
    let value = eval_c(p, &c);
    let r = ball.radius.clone();
    let reach = sqrt_up(&c.norm_sq(), prec) + &r;
    // |p(c + h) − p(c)| ≤ |h| Σ k |b_k| (|c| + |h|)^{k−1}
    let mut deriv_bound = BigRational::zero();
    let mut pw = BigRational::one();
    for (k, b) in p.coeffs().iter().enumerate().skip(1) {
        deriv_bound += b.abs() * BigRational::from_integer(BigInt::from(k as u64)) * &pw;
        pw *= &reach;
    }
    let rounded = value.round(prec + 1);
    let err = value.sub(&rounded);
    let radius = r * deriv_bound + sqrt_up(&err.norm_sq(), prec + 2);
    (rounded, ceil_dyadic(&radius, prec + 2))
}

/// Number of real roots of a squarefree rational polynomial (Sturm).
pub fn real_root_count(p: &Polynomial<BigRational>) -> usize {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().expect("nonempty").is_zero() {
        let k = seq.len();
        let (_, r) = seq[k - 2].divmod(&seq[k - 1]).expect("nonzero divisor");
        seq.push(-r);
    }
    seq.pop();
    let variations = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos: Vec<bool> = seq
        .iter()
        .map(|q| q.leading_coefficient().expect("nonzero").is_positive())
        .collect();
    let at_neg: Vec<bool> = seq
        .iter()
        .map(|q| {
            let pos = q.leading_coefficient().expect("nonzero").is_positive();
            pos == (q.degree().expect("nonzero") % 2 == 0)
        })
        .collect();
    variations(at_neg) - variations(at_pos)
}

/// A square root of −1 in the field, if one exists.
///
/// Any such `x` sends each embedding to `±i`, so its traces against the power
/// basis are integers computable from the embeddings; each sign pattern gives
/// one candidate, which is then checked exactly.
pub fn sqrt_minus_one(field: &Arc<FieldDescriptor>) -> Result<Option<NumberFieldElement>, ArithError> {
    let d = field.degree();
    let m = field.modulus_rational();
    if d % 2 == 1 || real_root_count(m) > 0 {
        return Ok(None);
    }
    let mut prec = 256;
    let balls = loop {
        let balls = embeddings(field, prec)?;
        if balls.iter().all(|b| b.in_upper_half() || b.in_lower_half()) {
            break balls;
        }
        if prec >= MAX_PRECISION {
            return Err(ArithError::IsolationFailure);
        }
        prec *= 2;
    };
    let upper: Vec<CRat> = balls
        .iter()
        .filter(|b| b.in_upper_half())
        .map(|b| CRat::new(b.re.clone(), b.im.clone()))
        .collect();
    if upper.len() * 2 != d {
        return Err(ArithError::IsolationFailure);
    }
    let sums = power_sums(field.modulus(), 2 * d);
    let trace: Vec<Vec<BigRational>> = (0..d)
        .map(|i| (0..d).map(|k| sums[i + k].clone()).collect())
        .collect();
    // Im(z^k) for each upper root
    let imag_powers: Vec<Vec<BigRational>> = upper
        .iter()
        .map(|z| {
            let mut acc = CRat::real(BigRational::one());
            (0..d)
                .map(|_| {
                    let im = acc.im.clone();
                    acc = acc.mul(z).round(prec);
                    im
                })
                .collect()
        })
        .collect();
    let minus_one = NumberFieldElement::integer(-1).in_field(field);
    for pattern in 0u64..(1u64 << upper.len()) {
        // Tr(x t^k) = Σ_upper −2 ε Im(z^k)
        let rhs: Vec<BigRational> = (0..d)
            .map(|k| {
                let mut s = BigRational::zero();
                for (j, powers) in imag_powers.iter().enumerate() {
                    let term = &powers[k] * BigInt::from(2);
                    if pattern >> j & 1 == 1 {
                        s += term;
                    } else {
                        s -= term;
                    }
                }
                BigRational::from_integer(s.round().to_integer())
            })
            .collect();
        let Some(coords) = solve(trace.clone(), rhs) else {
            continue;
        };
        let x = NumberFieldElement::from_coords(field, coords);
        if x.mul_ref(&x) == minus_one {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Newton power sums `s_k = Σ rootᵢ^k`, `k < count`, of a monic polynomial.
fn power_sums(m: &Polynomial<BigInt>, count: usize) -> Vec<BigRational> {
    let d = m.degree().expect("nonconstant");
    // e-coefficients: m = Σ a_j t^j, a_d = 1
    let a = |j: usize| -> BigInt { m.coeff(j) };
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(BigInt::from(d as u64));
            continue;
        }
        // s_k + a_{d-1} s_{k-1} + ... + a_{d-k+1} s_1 + k a_{d-k} = 0  (k ≤ d)
        // s_k + a_{d-1} s_{k-1} + ... + a_0 s_{k-d} = 0                  (k > d)
        let mut acc = BigInt::zero();
        for i in 1..=k.min(d) {
            if i < k {
                acc += a(d - i) * &s[k - i];
            } else {
                acc += a(d - i) * BigInt::from(k as u64);
            }
        }
        if k > d {
            acc = BigInt::zero();
            for i in 1..=d {
                acc += a(d - i) * &s[k - i];
            }
        }
        s.push(-acc);
    }
    s.into_iter().map(BigRational::from_integer).collect()
}

/// Gaussian elimination over ℚ; `None` for a singular system.
pub(crate) fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
