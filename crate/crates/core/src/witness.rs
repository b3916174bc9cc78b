//! Builders and verifiers for the existential witnesses: divisors of
//! `Z^u − 1`, root-of-unity polynomials, `ℤ[Z]` inside `ℛ[Z]`, and degrees.
//!
//! Every verifier treats its input as untrusted and names the first clause
//! that fails.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::approx::{approximate_by_c_with_budget, ApproxError, DEFAULT_DEGREE_BUDGET};
use crate::arith::{abs_bound_leq, NumberFieldElement, TriState};
use crate::encode::Subring;
use crate::scalar::{Field, Ring};
use crate::special::{chebyshev_pair, chebyshev_at, pell_recognize, recognize_c, CycloFactorization};
use crate::text::to_integer_poly;
use crate::{KPoly, ZPoly};

/// Clause names reported by the verifiers.
pub mod clause {
    pub const DEG_G: &str = "deg G ≥ 3";
    pub const G_FORM: &str = "G = 1 − Z·S";
    pub const Y_NONZERO: &str = "Y ≠ 0";
    pub const PELL: &str = "X² − (((Z+S)/2)² − 1)·Y² = 1";
    pub const X_SIGN: &str = "X ≡ 1 mod Z+S−2";
    pub const POWER: &str = "X + ((Z−S)/2)·Y ≡ 1 mod G";
    pub const INDEX: &str = "n is the index of (X, Y)";
    pub const DIVIDES_POWER: &str = "G | Z^u − 1";

    pub const F_NONZERO: &str = "F ≠ 0";
    pub const F_DIVIDES_G: &str = "F | G";
    pub const CUBE_DIVIDES_G: &str = "(Z³−1) | G";
    pub const INNER_G: &str = "inner G = G";
    pub const INNER_U: &str = "u = inner exponent";

    pub const UNIT_CONSTANT: &str = "Z | F² − 1";
    pub const EVALUATION: &str = "F ≡ t mod Z − 2^deg F − 1";
    pub const F_INTEGRAL: &str = "F ∈ ℤ[Z]";
    pub const F_IN_C: &str = "F ∈ 𝒞";
    pub const COEFFS_IN_O: &str = "coefficients in 𝒪";
    pub const F_DIVIDES_POWER: &str = "F | Z^u − 1";

    pub const M_IN_C: &str = "M ∈ 𝒞";
    pub const D_IN_C: &str = "D ∈ 𝒞";
    pub const D_ROOT: &str = "(Z−1) | D";
    pub const REMAINDER: &str = "R = 0 ∨ deg R < deg D";
    pub const DIVISION: &str = "M = Q(D+1) + R";
    pub const C_INTEGER: &str = "C ∈ ℤ";
    pub const X_SUM: &str = "X = R + C";

    pub const DEG_PELL: &str = "X² − (Z²−1)Y² = 1";
    pub const DEG_VALUE: &str = "(Z−1) | Y − d";
    pub const DEG_EQUAL: &str = "deg F = deg X";
    pub const D_MATCHES: &str = "d = deg F";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Accept(T),
    Reject(&'static str),
}

impl<T> Verdict<T> {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept(_))
    }

    pub fn reason(&self) -> Option<&'static str> {
        match self {
            Verdict::Accept(_) => None,
            Verdict::Reject(r) => Some(r),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Accept(t) => Verdict::Accept(f(t)),
            Verdict::Reject(r) => Verdict::Reject(r),
        }
    }
}

macro_rules! require {
    ($cond:expr, $clause:expr) => {
        if !$cond {
            return Verdict::Reject($clause);
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("F does not divide Z^u - 1")]
    NotADivisor,
    #[error("F(2^deg F + 1) = {0} is not an integer")]
    NotInteger(String),
    #[error("F must be nonzero")]
    ZeroInput,
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

fn z() -> KPoly {
    KPoly::var()
}

fn kconst(n: i64) -> KPoly {
    KPoly::constant(NumberFieldElement::integer(n))
}

fn half() -> NumberFieldElement {
    NumberFieldElement::rational(BigRational::new(1.into(), 2.into()))
}

fn z_pow_minus_one(u: u64) -> KPoly {
    KPoly::z_pow_minus_one(u as usize)
}

/// `(Z + S)/2`.
fn pell_argument(s: &KPoly) -> KPoly {
    (&z() + s).scale(&half())
}

/// `G = 1 − Z·S`, with `X = Xₙ(T)`, `Y = Yₙ(T)` at `T = (Z+S)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivUWitness {
    pub g: KPoly,
    pub s: KPoly,
    pub x: KPoly,
    pub y: KPoly,
    pub n: i64,
}

pub fn build_divu_witness(g: &KPoly, u: u64) -> Result<DivUWitness, WitnessError> {
    if g.degree().unwrap_or(0) < 3 {
        return Err(WitnessError::PreconditionFailed(clause::DEG_G));
    }
    if !g.constant_term().is_one() {
        return Err(WitnessError::PreconditionFailed("constant term G(0) = 1"));
    }
    if u == 0 || !g.divides(&z_pow_minus_one(u)) {
        return Err(WitnessError::PreconditionFailed(clause::DIVIDES_POWER));
    }
    // S ≡ Z⁻¹ (mod G)
    let s = (&KPoly::one() - g)
        .checked_div(&z())
        .expect("G(0) = 1");
    let t = pell_argument(&s);
    let n = u as i64;
    let (x, y) = chebyshev_at(n, &t);
    Ok(DivUWitness {
        g: g.clone(),
        s,
        x,
        y,
        n,
    })
}

/// Accepts with the exponent `u = |n|` re-derived from `(X, Y)`.
pub fn verify_divu_witness(w: &DivUWitness) -> Verdict<u64> {
    let one = KPoly::one();
    require!(w.g.degree().unwrap_or(0) >= 3, clause::DEG_G);
    require!(w.g == &one - &(&z() * &w.s), clause::G_FORM);
    require!(!w.y.is_zero(), clause::Y_NONZERO);
    let t = pell_argument(&w.s);
    let disc = &(&t * &t) - &one;
    require!(
        &(&w.x * &w.x) - &(&disc * &(&w.y * &w.y)) == one,
        clause::PELL
    );
    let z_s_2 = &(&z() + &w.s) - &kconst(2);
    require!(KPoly::congruent_mod(&w.x, &one, &z_s_2), clause::X_SIGN);
    let u_half = (&z() - &w.s).scale(&half());
    require!(
        KPoly::congruent_mod(&(&w.x + &(&u_half * &w.y)), &one, &w.g),
        clause::POWER
    );
    let n = match pell_recognize(&t, &w.x, &w.y) {
        Ok(Some((n, 1))) => n,
        _ => return Verdict::Reject(clause::INDEX),
    };
    require!(n == w.n, clause::INDEX);
    let u = n.unsigned_abs();
    require!(u > 0 && w.g.divides(&z_pow_minus_one(u)), clause::DIVIDES_POWER);
    Verdict::Accept(u)
}

/// Names of the entries of `w` with a coefficient outside `ring`.
///
/// Chebyshev values at `(Z+S)/2` can have denominators 2, so a witness over
/// `K` need not live in `ℛ[Z]`.
pub fn divu_entries_outside(w: &DivUWitness, ring: &Subring) -> Vec<&'static str> {
    [("G", &w.g), ("S", &w.s), ("X", &w.x), ("Y", &w.y)]
        .into_iter()
        .filter(|(_, p)| !ring.contains_poly(p))
        .map(|(name, _)| name)
        .collect()
}

/// `F | G`, `(Z³−1) | G` and `G | Z^u − 1` with `G(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCertificate {
    pub f: KPoly,
    pub g: KPoly,
    pub u: u64,
    pub inner: DivUWitness,
}

pub fn build_divisor_certificate(f: &KPoly, u: u64) -> Result<DivisorCertificate, WitnessError> {
    if f.is_zero() {
        return Err(WitnessError::ZeroInput);
    }
    if u == 0 || !f.divides(&z_pow_minus_one(u)) {
        return Err(WitnessError::NotADivisor);
    }
    let l = z_pow_minus_one(3).lcm(f);
    let c = l.constant_term().inv().expect("divisor of Z^u - 1 has a unit constant term");
    let g = l.scale(&c);
    let inner = build_divu_witness(&g, 3 * u)?;
    Ok(DivisorCertificate {
        f: f.clone(),
        g,
        u: 3 * u,
        inner,
    })
}

pub fn verify_divisor_certificate(c: &DivisorCertificate) -> Verdict<u64> {
    require!(!c.f.is_zero(), clause::F_NONZERO);
    require!(c.f.divides(&c.g), clause::F_DIVIDES_G);
    require!(z_pow_minus_one(3).divides(&c.g), clause::CUBE_DIVIDES_G);
    require!(c.inner.g == c.g, clause::INNER_G);
    let u = match verify_divu_witness(&c.inner) {
        Verdict::Accept(u) => u,
        reject => return reject,
    };
    require!(u == c.u, clause::INNER_U);
    Verdict::Accept(u)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivLargeVerdict {
    IntegerCoeffs,
    NotIntegerEvaluation,
    PreconditionFailed(&'static str),
}

/// `2^{deg F} + 1`.
fn evaluation_point(f: &KPoly) -> BigInt {
    (BigInt::one() << f.degree().unwrap_or(0)) + 1
}

/// Decides `F ∈ ℤ[Z]` from the single value `F(2^{deg F} + 1)`, for `F` with
/// coefficients in `𝒪`, `F(0) = ±1` and `F | Z^u − 1`.
pub fn check_div_large(f: &KPoly, u: u64) -> DivLargeVerdict {
    use DivLargeVerdict::PreconditionFailed as Pre;
    if !f.coeffs().iter().all(|c| c.is_algebraic_integer()) {
        return Pre(clause::COEFFS_IN_O);
    }
    let c0 = f.constant_term();
    if !(c0.is_one() || (-c0).is_one()) {
        return Pre(clause::UNIT_CONSTANT);
    }
    if u == 0 || !f.divides(&z_pow_minus_one(u)) {
        return Pre(clause::F_DIVIDES_POWER);
    }
    let value = f.eval(&NumberFieldElement::from_integer(evaluation_point(f)));
    let integral = to_integer_poly(f).is_ok();
    if value.as_integer().is_some() {
        debug_assert!(integral, "integral value with non-integer coefficients: {}", f);
        DivLargeVerdict::IntegerCoeffs
    } else {
        debug_assert!(!integral);
        DivLargeVerdict::NotIntegerEvaluation
    }
}

/// Membership of `G` in the set of polynomials of degree at most `d` with
/// `G(2^d + 1) ∈ ℤ` and every conjugate of every coefficient bounded by
/// `2^{d−1}` in absolute value.
pub fn in_bounded_set(g: &KPoly, d: usize) -> TriState {
    if g.degree().unwrap_or(0) > d {
        return TriState::False;
    }
    let h = NumberFieldElement::from_integer((BigInt::one() << d) + 1);
    if g.eval(&h).as_integer().is_none() {
        return TriState::False;
    }
    let bound = BigRational::from_integer(BigInt::one() << d.saturating_sub(1));
    let mut out = TriState::True;
    for c in g.coeffs() {
        match abs_bound_leq(c, &bound) {
            TriState::False => return TriState::False,
            TriState::Undecided => out = TriState::Undecided,
            TriState::True => {}
        }
    }
    out
}

/// A divisor certificate for `F` and the integer `t = F(2^{deg F} + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMembershipCertificate {
    pub divisor: DivisorCertificate,
    pub t: BigInt,
}

pub fn certify_c_membership(f: &KPoly, u: u64) -> Result<CMembershipCertificate, WitnessError> {
    if !z().divides(&(&(f * f) - &KPoly::one())) {
        return Err(WitnessError::PreconditionFailed(clause::UNIT_CONSTANT));
    }
    let divisor = build_divisor_certificate(f, u)?;
    let value = f.eval(&NumberFieldElement::from_integer(evaluation_point(f)));
    let t = value
        .as_integer()
        .ok_or_else(|| WitnessError::NotInteger(value.to_string()))?;
    let integral = to_integer_poly(f).map_err(|_| WitnessError::PreconditionFailed(clause::F_INTEGRAL))?;
    if recognize_c(&integral).is_none() {
        return Err(WitnessError::PreconditionFailed(clause::F_IN_C));
    }
    Ok(CMembershipCertificate { divisor, t })
}

/// Accepts with the factorization of `F` as a root-of-unity polynomial.
pub fn verify_c_membership(c: &CMembershipCertificate) -> Verdict<CycloFactorization> {
    let f = &c.divisor.f;
    require!(z().divides(&(&(f * f) - &KPoly::one())), clause::UNIT_CONSTANT);
    if let Verdict::Reject(r) = verify_divisor_certificate(&c.divisor) {
        return Verdict::Reject(r);
    }
    let h = NumberFieldElement::from_integer(evaluation_point(f));
    let modulus = &z() - &KPoly::constant(h);
    let t = KPoly::constant(NumberFieldElement::from_integer(c.t.clone()));
    require!(KPoly::congruent_mod(f, &t, &modulus), clause::EVALUATION);
    // the clauses above force integer coefficients
    let Ok(integral) = to_integer_poly(f) else {
        return Verdict::Reject(clause::F_INTEGRAL);
    };
    match recognize_c(&integral) {
        Some(fact) => Verdict::Accept(fact),
        None => Verdict::Reject(clause::F_IN_C),
    }
}

/// `M ∈ 𝒞`, `D ∈ 𝒞`, `(Z−1) | D`, `M = Q(D+1) + R` with `R = 0` or
/// `deg R < deg D`, `C ∈ ℤ` and `X = R + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZZWitness {
    pub m: KPoly,
    pub d: KPoly,
    pub q: KPoly,
    pub r: KPoly,
    pub c: NumberFieldElement,
    pub x: KPoly,
}

fn embed(p: &ZPoly) -> KPoly {
    p.map(|c| NumberFieldElement::from_integer(c.clone()))
}

pub fn build_zz_witness(x: &ZPoly) -> Result<ZZWitness, WitnessError> {
    build_zz_witness_with_budget(x, DEFAULT_DEGREE_BUDGET)
}

pub fn build_zz_witness_with_budget(x: &ZPoly, budget: u64) -> Result<ZZWitness, WitnessError> {
    let c = x.constant_term() - BigInt::one();
    let r = x - &ZPoly::constant(c.clone());
    let k = r.degree().expect("R(0) = 1") + 1;
    let d = ZPoly::z_pow_minus_one(k);
    let (m, _) = approximate_by_c_with_budget(&r, k, budget)?;
    let q = (&m - &r)
        .checked_div(&ZPoly::monomial(BigInt::one(), k))
        .expect("M ≡ R (mod Z^k)");
    Ok(ZZWitness {
        m: embed(&m),
        d: embed(&d),
        q: embed(&q),
        r: embed(&r),
        c: NumberFieldElement::from_integer(c),
        x: embed(x),
    })
}

fn in_c(p: &KPoly) -> bool {
    !p.is_zero() && to_integer_poly(p).ok().and_then(|p| recognize_c(&p)).is_some()
}

/// Accepts with `X`, which the clauses force into `ℤ[Z]`.
pub fn verify_zz_witness(w: &ZZWitness) -> Verdict<ZPoly> {
    require!(in_c(&w.m), clause::M_IN_C);
    require!(in_c(&w.d), clause::D_IN_C);
    require!(KPoly::from_i64s(&[-1, 1]).divides(&w.d), clause::D_ROOT);
    require!(
        w.r.is_zero() || w.r.degree() < w.d.degree(),
        clause::REMAINDER
    );
    require!(
        w.m == &(&w.q * &(&w.d + &KPoly::one())) + &w.r,
        clause::DIVISION
    );
    require!(w.c.as_integer().is_some(), clause::C_INTEGER);
    require!(w.x == &w.r + &KPoly::constant(w.c.clone()), clause::X_SUM);
    let x = to_integer_poly(&w.x).expect("clauses force X into Z[Z]");
    Verdict::Accept(x)
}

/// `X² − (Z²−1)Y² = 1`, `Y(1) = d` and `deg F = deg X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWitness {
    pub x: ZPoly,
    pub y: ZPoly,
    pub d: u64,
    pub f: KPoly,
}

pub fn build_degree_witness(f: &KPoly, d: u64) -> Result<DegreeWitness, WitnessError> {
    let deg = f.degree().ok_or(WitnessError::ZeroInput)?;
    if deg as u64 != d {
        return Err(WitnessError::PreconditionFailed(clause::D_MATCHES));
    }
    let pair = chebyshev_pair(d as i64);
    Ok(DegreeWitness {
        x: pair.x,
        y: pair.y,
        d,
        f: f.clone(),
    })
}

/// Accepts with the certified degree.
pub fn verify_degree_witness(w: &DegreeWitness) -> Verdict<u64> {
    let pell = &(&w.x * &w.x) - &(&ZPoly::from_i64s(&[-1, 0, 1]) * &(&w.y * &w.y));
    require!(pell.is_one(), clause::DEG_PELL);
    let shifted = &w.y - &ZPoly::constant(BigInt::from(w.d));
    require!(ZPoly::from_i64s(&[-1, 1]).divides(&shifted), clause::DEG_VALUE);
    require!(!w.f.is_zero(), clause::F_NONZERO);
    require!(
        w.f.degree().and_then(|d| d.to_u64()) == w.x.degree().and_then(|d| d.to_u64()),
        clause::DEG_EQUAL
    );
    Verdict::Accept(w.d)
}
