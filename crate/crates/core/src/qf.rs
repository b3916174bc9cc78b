//! Diagonal quadratic forms over `K(Z)`, the forms attached to a rational
//! function `F`, and the valuation bookkeeping behind the degree definition.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{minimal_polynomial_of, sqrt_minus_one, ArithError, FieldDescriptor, NumberFieldElement};
use crate::poly::Valuation;
use crate::scalar::{Field, Ring};
use crate::special::numtheory::{is_prime_u64, totient_at_most};
use crate::{KPoly, KRatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QfError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("alpha is not a root of unity")]
    NotRootOfUnity,
    #[error("pi must be nonzero")]
    ZeroPi,
    #[error("quadratic form entries must be nonzero")]
    ZeroEntry,
    #[error("quadratic form must have at least one entry")]
    EmptyForm,
    #[error("form has dimension {expected} but the vector has {found} entries")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Z^3 + Z^2 X^3 vanishes")]
    ZeroDenominator,
    #[error("(Z + Z^2) + X^3 vanishes")]
    ZeroNumerator,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The data `(p, α, π)` of a local field hypothesis. Only the algebraic
/// conditions are checked; the local ones are kept as text.
#[derive(Debug, Clone)]
pub struct HypothesisHConfig {
    pub field: Arc<FieldDescriptor>,
    pub p: u64,
    pub alpha: NumberFieldElement,
    pub pi: NumberFieldElement,
    pub has_sqrt_minus_one: bool,
    pub unchecked_claims: Vec<String>,
}

/// `Some(k)` with `αᵏ = 1`, `k` minimal.
pub fn root_of_unity_order(alpha: &NumberFieldElement) -> Option<u64> {
    if alpha.is_zero() {
        return None;
    }
    let m = minimal_polynomial_of(alpha).degree().unwrap_or(0) as u64;
    let one = NumberFieldElement::one();
    let candidates = totient_at_most(m);
    let max = *candidates.last()?;
    let mut power = alpha.clone();
    for k in 1..=max {
        if power == one {
            return Some(k);
        }
        power = power.mul_ref(alpha);
    }
    None
}

impl HypothesisHConfig {
    pub fn new(
        field: &Arc<FieldDescriptor>,
        p: u64,
        alpha: NumberFieldElement,
        pi: NumberFieldElement,
    ) -> Result<Self, QfError> {
        if p == 2 || !is_prime_u64(p) {
            return Err(QfError::NotOddPrime(p));
        }
        if root_of_unity_order(&alpha).is_none() {
            return Err(QfError::NotRootOfUnity);
        }
        if pi.is_zero() {
            return Err(QfError::ZeroPi);
        }
        let has_sqrt_minus_one = sqrt_minus_one(field)?.is_some();
        let unchecked_claims = vec![
            "v_p(pi) is odd".to_string(),
            "<1,alpha><1,pi> is anisotropic over the completion L_p".to_string(),
            "<1,alpha><1,pi> is isotropic in every 2-adic completion of Q(alpha, pi, sqrt(-1))"
                .to_string(),
        ];
        Ok(Self {
            field: field.clone(),
            p,
            alpha,
            pi,
            has_sqrt_minus_one,
            unchecked_claims,
        })
    }
}

/// `⟨d₁, …, d_k⟩` with nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    entries: Vec<KRatFunc>,
}

impl DiagonalForm {
    pub fn new(entries: Vec<KRatFunc>) -> Result<Self, QfError> {
        if entries.is_empty() {
            return Err(QfError::EmptyForm);
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(QfError::ZeroEntry);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[KRatFunc] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| serde_json::Value::String(e.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `⟨aᵢ·bⱼ⟩` in row-major order.
pub fn form_product(a: &DiagonalForm, b: &DiagonalForm) -> DiagonalForm {
    let entries = a
        .entries
        .iter()
        .flat_map(|x| b.entries.iter().map(move |y| x * y))
        .collect();
    DiagonalForm { entries }
}

/// `Σ dᵢ·vᵢ²`.
pub fn evaluate_form(f: &DiagonalForm, v: &[KRatFunc]) -> Result<KRatFunc, QfError> {
    if v.len() != f.dim() {
        return Err(QfError::DimensionMismatch {
            expected: f.dim(),
            found: v.len(),
        });
    }
    Ok(f.entries
        .iter()
        .zip(v)
        .fold(KRatFunc::zero(), |acc, (d, x)| &acc + &(d * &(x * x))))
}

pub fn verify_isotropy_witness(f: &DiagonalForm, v: &[KRatFunc]) -> Result<bool, QfError> {
    let value = evaluate_form(f, v)?;
    Ok(v.iter().any(|x| !x.is_zero()) && value.is_zero())
}

/// `G = G_N / G_D` with the unreduced `G_N = (Z + Z²) + X³` and
/// `G_D = Z³ + Z²X³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GConstruction {
    pub g: KRatFunc,
    pub g_n: KRatFunc,
    pub g_d: KRatFunc,
}

fn z_poly(coeffs: &[i64]) -> KRatFunc {
    KRatFunc::from_poly(KPoly::from_i64s(coeffs))
}

pub fn build_g(x: &KRatFunc) -> Result<GConstruction, QfError> {
    let x3 = &(x * x) * x;
    let g_n = &z_poly(&[0, 1, 1]) + &x3;
    let g_d = &z_poly(&[0, 0, 0, 1]) + &(&z_poly(&[0, 0, 1]) * &x3);
    let g = g_n.checked_div(&g_d).ok_or(QfError::ZeroDenominator)?;
    Ok(GConstruction { g, g_n, g_d })
}

/// `(1 + Z⁻¹)³·G + γ₃Z⁻³ + γ₅Z⁻⁵`.
pub fn build_f(g: &KRatFunc, gamma3: &KRatFunc, gamma5: &KRatFunc) -> KRatFunc {
    let zinv = KRatFunc::z_pow(-1);
    let one_plus = &KRatFunc::one() + &zinv;
    let cube = &(&one_plus * &one_plus) * &one_plus;
    let lead = &cube * g;
    let t3 = gamma3 * &KRatFunc::z_pow(-3);
    let t5 = gamma5 * &KRatFunc::z_pow(-5);
    &(&lead + &t3) + &t5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationCase {
    /// `v_{Z⁻¹}(X) ≥ 0` and `v_Z(X) ≥ 1` (including `X = 0`).
    VzGe1,
    /// `v_{Z⁻¹}(X) ≥ 0` and `v_Z(X) ≤ 0`.
    VzLe0,
    /// `v_{Z⁻¹}(X) < 0`.
    VzinfNegative,
}

impl fmt::Display for ValuationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValuationCase::VzGe1 => "vZ_ge1",
            ValuationCase::VzLe0 => "vZ_le0",
            ValuationCase::VzinfNegative => "vZinf_negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case: ValuationCase,
    pub vz_g: i64,
    pub vzinf_g: i64,
    pub consistent: bool,
}

/// Valuations of `G` against the expected table: `(v_{Z⁻¹}(G), v_Z(G)) =
/// (1, −2)` when `v_{Z⁻¹}(X) ≥ 0`, and `v_{Z⁻¹}(G) = 2` otherwise.
pub fn valuation_case_analysis(x: &KRatFunc) -> Result<CaseReport, QfError> {
    let parts = build_g(x)?;
    let (Some(vz_g), Some(vzinf_g)) = (parts.g.v_z().finite(), parts.g.v_zinf().finite()) else {
        return Err(QfError::ZeroNumerator);
    };
    let case = if x.v_zinf() < Valuation::Finite(0) {
        ValuationCase::VzinfNegative
    } else if x.v_z() >= Valuation::Finite(1) {
        ValuationCase::VzGe1
    } else {
        ValuationCase::VzLe0
    };
    let consistent = match case {
        ValuationCase::VzinfNegative => {
            // the numerator and denominator valuations drive the conclusion
            let vx = x.v_zinf().finite().expect("X ≠ 0");
            parts.g_n.v_zinf() == Valuation::Finite(3 * vx)
                && parts.g_d.v_zinf() == Valuation::Finite(3 * vx - 2)
                && vzinf_g == 2
        }
        _ => vzinf_g == 1 && vz_g == -2,
    };
    Ok(CaseReport {
        case,
        vz_g,
        vzinf_g,
        consistent,
    })
}

fn constant(c: &NumberFieldElement) -> KRatFunc {
    KRatFunc::constant(c.clone())
}

fn kr_forms(f: &KRatFunc, cfg: &HypothesisHConfig, alpha_sign: i64) -> Result<(DiagonalForm, DiagonalForm), QfError> {
    if f.is_zero() {
        return Err(QfError::ZeroEntry);
    }
    let alpha = constant(&cfg.alpha);
    let z = KRatFunc::var();
    let signed_alpha_z = (&alpha * &z).scale(&NumberFieldElement::integer(alpha_sign));
    let minus_one = KRatFunc::constant(NumberFieldElement::integer(-1));
    let right = DiagonalForm::new(vec![KRatFunc::one(), constant(&cfg.pi)])?;
    let q1 = DiagonalForm::new(vec![z.clone(), signed_alpha_z.clone(), minus_one.clone(), -f])?;
    let q2 = DiagonalForm::new(vec![z, signed_alpha_z, minus_one, -&(&alpha * f)])?;
    Ok((form_product(&q1, &right), form_product(&q2, &right)))
}

/// `⟨Z, αZ, −1, −F⟩⟨1, π⟩` and `⟨Z, αZ, −1, −αF⟩⟨1, π⟩`.
pub fn assemble_kr_forms(f: &KRatFunc, cfg: &HypothesisHConfig) -> Result<(DiagonalForm, DiagonalForm), QfError> {
    kr_forms(f, cfg, 1)
}

/// `⟨Z, −αZ, −1, −F⟩⟨1, π⟩` and `⟨Z, −αZ, −1, −αF⟩⟨1, π⟩`, the variant
/// that appears in the anisotropy statement.
pub fn assemble_aniso_forms(f: &KRatFunc, cfg: &HypothesisHConfig) -> Result<(DiagonalForm, DiagonalForm), QfError> {
    kr_forms(f, cfg, -1)
}

/// Square root of a polynomial whose leading coefficient is the square of
/// a rational number.
fn poly_sqrt(p: &KPoly) -> Option<KPoly> {
    if p.is_zero() {
        return Some(KPoly::zero());
    }
    let deg = p.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let lead = p.leading_coefficient()?.as_rational()?;
    let root0 = rational_sqrt(&lead)?;
    let m = deg / 2;
    let desc: Vec<NumberFieldElement> = p.coeffs().iter().rev().cloned().collect();
    let mut s = vec![NumberFieldElement::rational(root0)];
    let two_s0 = s[0].mul_ref(&NumberFieldElement::integer(2));
    for k in 1..=m {
        let mut acc = desc[k].clone();
        for i in 1..k {
            acc = acc.sub_ref(&s[i].mul_ref(&s[k - i]));
        }
        s.push(acc.div_ref(&two_s0)?);
    }
    s.reverse();
    let r = KPoly::from_coeffs(s);
    (&r * &r == *p).then_some(r)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Bounded random search for a nontrivial zero of `f`: the first `k − 1`
/// coordinates are random integer polynomials, and the last is solved for
/// when the required value is a square. Never proves anisotropy.
pub fn search_isotropy_witness(
    f: &DiagonalForm,
    seed: u64,
    tries: usize,
    max_degree: usize,
    height: i64,
) -> Option<Vec<KRatFunc>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = f.dim();
    let last = &f.entries[k - 1];
    for _ in 0..tries {
        let v: Vec<KRatFunc> = (0..k - 1)
            .map(|_| {
                let deg = rng.gen_range(0..=max_degree);
                let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-height..=height)).collect();
                z_poly(&coeffs)
            })
            .collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let partial = f.entries[..k - 1]
            .iter()
            .zip(&v)
            .fold(KRatFunc::zero(), |acc, (d, x)| &acc + &(d * &(x * x)));
        // need d_k · w² = −partial
        let target = (-&partial).checked_div(last)?;
        let num = poly_sqrt(target.numerator());
        let den = poly_sqrt(target.denominator());
        if let (Some(n), Some(d)) = (num, den) {
            let w = KRatFunc::new(n, d).ok()?;
            let mut witness = v;
            witness.push(w);
            debug_assert!(verify_isotropy_witness(f, &witness).unwrap_or(false));
            return Some(witness);
        }
    }
    None
}
