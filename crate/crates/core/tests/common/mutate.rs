//! One targeted tampering per verifier clause.
//!
//! Some clauses are implied by earlier ones (for instance `G | Z^u − 1`
//! follows from the power congruence and the index), so no single edit can
//! make only those fail; the suites list every clause that can be reached
//! on its own.

use diophz::arith::NumberFieldElement;
use diophz::special::chebyshev_at;
use diophz::witness::{clause, CMembershipCertificate, DegreeWitness, DivUWitness, DivisorCertificate, ZZWitness};
use diophz::{KPoly, Rational, ZPoly};

fn k(c: &[i64]) -> KPoly {
    KPoly::from_i64s(c)
}

pub fn divu(w: &DivUWitness) -> Vec<(&'static str, DivUWitness)> {
    let mut out = Vec::new();
    let mut m = w.clone();
    m.g = k(&[1, -1]);
    out.push((clause::DEG_G, m));

    let mut m = w.clone();
    m.g = &w.g + &k(&[0, 1]);
    out.push((clause::G_FORM, m));

    let mut m = w.clone();
    m.y = KPoly::zero();
    out.push((clause::Y_NONZERO, m));

    let mut m = w.clone();
    m.x = &w.x + &KPoly::one();
    out.push((clause::PELL, m));

    let mut m = w.clone();
    m.x = -&w.x;
    out.push((clause::X_SIGN, m));

    // the next Chebyshev pair at the same argument
    let t = (&k(&[0, 1]) + &w.s).scale(&NumberFieldElement::rational(Rational::new(1.into(), 2.into())));
    let (x, y) = chebyshev_at(w.n + 1, &t);
    let mut m = w.clone();
    m.x = x;
    m.y = y;
    m.n = w.n + 1;
    out.push((clause::POWER, m));

    let mut m = w.clone();
    m.n = w.n + 1;
    out.push((clause::INDEX, m));

    let mut m = w.clone();
    m.n = -w.n;
    out.push((clause::INDEX, m));
    out
}

pub fn divisor(c: &DivisorCertificate) -> Vec<(&'static str, DivisorCertificate)> {
    let mut out = Vec::new();
    let mut m = c.clone();
    m.f = KPoly::zero();
    out.push((clause::F_NONZERO, m));

    let mut m = c.clone();
    m.f = &c.f * &k(&[2, 1]);
    out.push((clause::F_DIVIDES_G, m));

    // unreachable when (Z³−1) | F already
    if !k(&[-1, 0, 0, 1]).divides(&c.f) {
        let mut m = c.clone();
        m.g = c.f.clone();
        out.push((clause::CUBE_DIVIDES_G, m));
    }

    let mut m = c.clone();
    m.g = &c.g * &k(&[2, 1]);
    out.push((clause::INNER_G, m));

    let mut m = c.clone();
    m.u = c.u + 1;
    out.push((clause::INNER_U, m));

    for (name, inner) in divu(&c.inner) {
        let mut m = c.clone();
        m.inner = inner;
        out.push((name, m));
    }
    out
}

pub fn cmember(c: &CMembershipCertificate) -> Vec<(&'static str, CMembershipCertificate)> {
    let mut out = Vec::new();
    let mut m = c.clone();
    m.divisor.f = c.divisor.f.scale(&NumberFieldElement::integer(2));
    out.push((clause::UNIT_CONSTANT, m));

    let mut m = c.clone();
    m.t = &c.t + 1;
    out.push((clause::EVALUATION, m));

    for (name, d) in divisor(&c.divisor) {
        let mut m = c.clone();
        m.divisor = d;
        out.push((name, m));
    }
    out
}

pub fn zz(w: &ZZWitness) -> Vec<(&'static str, ZZWitness)> {
    let one = KPoly::one();
    let mut out = Vec::new();
    let mut m = w.clone();
    m.m = w.m.scale(&NumberFieldElement::integer(2));
    out.push((clause::M_IN_C, m));

    let mut m = w.clone();
    m.d = w.d.scale(&NumberFieldElement::integer(2));
    out.push((clause::D_IN_C, m));

    let mut m = w.clone();
    m.d = k(&[1, 1]);
    out.push((clause::D_ROOT, m));

    // keeps M = Q(D+1) + R but lifts R to the degree of D
    let mut m = w.clone();
    m.r = &(&w.r + &w.d) + &one;
    m.q = &w.q - &one;
    m.x = &m.r + &KPoly::constant(w.c.clone());
    out.push((clause::REMAINDER, m));

    let mut m = w.clone();
    m.q = &w.q + &one;
    out.push((clause::DIVISION, m));

    let half = NumberFieldElement::rational(Rational::new(1.into(), 2.into()));
    let mut m = w.clone();
    m.c = w.c.clone() + half.clone();
    m.x = &w.x + &KPoly::constant(half);
    out.push((clause::C_INTEGER, m));

    let mut m = w.clone();
    m.x = &w.x + &one;
    out.push((clause::X_SUM, m));
    out
}

pub fn degree(w: &DegreeWitness) -> Vec<(&'static str, DegreeWitness)> {
    let mut out = Vec::new();
    let mut m = w.clone();
    m.x = &w.x + &ZPoly::one();
    out.push((clause::DEG_PELL, m));

    let mut m = w.clone();
    m.d = w.d + 1;
    out.push((clause::DEG_VALUE, m));

    let mut m = w.clone();
    m.f = KPoly::zero();
    out.push((clause::F_NONZERO, m));

    let mut m = w.clone();
    m.f = &w.f * &k(&[0, 1]);
    out.push((clause::DEG_EQUAL, m));
    out
}
