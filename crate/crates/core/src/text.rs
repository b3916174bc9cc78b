//! Text syntax for fields, elements, polynomials and rational functions.
//!
//! Input is a small arithmetic language: `+ - * / ^`, parentheses, integer
//! literals, the indeterminate `Z` and the field generator. Whitespace is
//! ignored. Output of every `Display` impl in this crate parses back to the
//! same value.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{ArithError, FieldDescriptor, NumberFieldElement};
use crate::poly::{Polynomial, RationalFunction};
use crate::scalar::{Field, Ring};
use crate::{KPoly, KRatFunc, ZPoly};

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {at}")]
    BadChar { ch: char, at: usize },
    #[error("unexpected {found} at offset {at}")]
    Unexpected { found: String, at: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a polynomial, found a proper rational function")]
    NotPolynomial,
    #[error("expected a field element, found a non-constant expression")]
    NotConstant,
    #[error("coefficient {0} is not an integer")]
    NotInteger(String),
    #[error("field descriptor must look like `Q` or `Q(a)/<polynomial in a>`")]
    BadField,
    #[error(transparent)]
    Field(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Token::Int(digits.parse().expect("digits")), at));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Token::Ident(word), at));
        } else if "+-*/^()".contains(c) {
            out.push((Token::Sym(c), at));
            i += 1;
        } else {
            return Err(ParseError::BadChar { ch: c, at });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            None => ParseError::Eof,
            Some((t, at)) => ParseError::Unexpected {
                found: match t {
                    Token::Int(n) => n.to_string(),
                    Token::Ident(s) => s.clone(),
                    Token::Sym(c) => c.to_string(),
                },
                at: *at,
            },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let e = n
                    .to_u32()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| ParseError::ExponentTooLarge(n.to_string()))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

fn eval<T: Field>(
    e: &Expr,
    leaf: &dyn Fn(&str) -> Option<RationalFunction<T>>,
) -> Result<RationalFunction<T>, ParseError> {
    Ok(match e {
        Expr::Int(n) => RationalFunction::constant(T::from_integer(n.clone())),
        Expr::Var(s) => leaf(s).ok_or_else(|| ParseError::UnknownSymbol(s.clone()))?,
        Expr::Neg(a) => -eval(a, leaf)?,
        Expr::Add(..) | Expr::Sub(..) => {
            let mut terms = Vec::new();
            flatten_sum(e, false, &mut terms);
            sum(&terms, leaf)?
        }
        Expr::Mul(a, b) => eval(a, leaf)? * eval(b, leaf)?,
        Expr::Div(a, b) => {
            let d = eval(b, leaf)?;
            eval(a, leaf)?
                .checked_div(&d)
                .ok_or(ParseError::DivisionByZero)?
        }
        Expr::Pow(a, k) => eval(a, leaf)?
            .pow(*k as i64)
            .expect("nonnegative exponent"),
    })
}

// Terms of a left-leaning chain of `+` and `-`, with their signs.
fn flatten_sum<'e>(e: &'e Expr, negate: bool, out: &mut Vec<(bool, &'e Expr)>) {
    match e {
        Expr::Add(a, b) => {
            flatten_sum(a, negate, out);
            out.push((negate, b));
        }
        Expr::Sub(a, b) => {
            flatten_sum(a, negate, out);
            out.push((!negate, b));
        }
        _ => out.push((negate, e)),
    }
}

// Polynomial terms are accumulated in place, so a long sum stays linear in
// its length.
fn sum<T: Field>(
    terms: &[(bool, &Expr)],
    leaf: &dyn Fn(&str) -> Option<RationalFunction<T>>,
) -> Result<RationalFunction<T>, ParseError> {
    let mut coeffs: Vec<T> = Vec::new();
    let mut rest = RationalFunction::zero();
    for &(neg, t) in terms {
        let v = eval(t, leaf)?;
        match v.as_polynomial() {
            Some(p) => {
                if coeffs.len() < p.coeffs().len() {
                    coeffs.resize(p.coeffs().len(), T::zero());
                }
                for (acc, c) in coeffs.iter_mut().zip(p.coeffs()).filter(|(_, c)| !c.is_zero()) {
                    *acc = if neg { acc.sub_ref(c) } else { acc.add_ref(c) };
                }
            }
            None => rest = if neg { &rest - &v } else { &rest + &v },
        }
    }
    Ok(&RationalFunction::from_poly(Polynomial::from_coeffs(coeffs)) + &rest)
}

/// `Q` or `Q(a)/<polynomial in a>`, e.g. `Q(a)/a^2+1`.
pub fn parse_field(s: &str) -> Result<Arc<FieldDescriptor>, ParseError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "Q" {
        return Ok(FieldDescriptor::rationals());
    }
    let rest = compact.strip_prefix("Q(").ok_or(ParseError::BadField)?;
    let close = rest.find(')').ok_or(ParseError::BadField)?;
    let symbol = &rest[..close];
    let body = rest[close + 1..]
        .strip_prefix('/')
        .ok_or(ParseError::BadField)?;
    if symbol.is_empty() || symbol == "Z" || !symbol.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(ParseError::BadField);
    }
    let expr = parse_expr(body)?;
    let f = eval::<BigRational>(&expr, &|name| {
        (name == symbol).then(RationalFunction::var)
    })?;
    let p = f.as_polynomial().ok_or(ParseError::NotPolynomial)?;
    Ok(FieldDescriptor::new(symbol, p)?)
}

/// A rational function in `Z` over `field`.
pub fn parse_ratfunc(s: &str, field: &Arc<FieldDescriptor>) -> Result<KRatFunc, ParseError> {
    let expr = parse_expr(s)?;
    let generator = NumberFieldElement::generator(field);
    let symbol = field.symbol().to_string();
    let f = eval::<NumberFieldElement>(&expr, &|name| {
        if name == "Z" {
            Some(RationalFunction::var())
        } else if name == symbol && !field.is_rationals() {
            Some(RationalFunction::constant(generator.clone()))
        } else {
            None
        }
    })?;
    Ok(f)
}

/// A polynomial in `Z` over `field`.
pub fn parse_poly(s: &str, field: &Arc<FieldDescriptor>) -> Result<KPoly, ParseError> {
    let f = parse_ratfunc(s, field)?;
    f.as_polynomial().cloned().ok_or(ParseError::NotPolynomial)
}

/// A polynomial with integer coefficients.
pub fn parse_zpoly(s: &str) -> Result<ZPoly, ParseError> {
    let p = parse_poly(s, &FieldDescriptor::rationals())?;
    to_integer_poly(&p).map_err(|c| ParseError::NotInteger(c.to_string()))
}

/// An element of `field`.
pub fn parse_element(s: &str, field: &Arc<FieldDescriptor>) -> Result<NumberFieldElement, ParseError> {
    let p = parse_poly(s, field)?;
    if !p.is_constant() {
        return Err(ParseError::NotConstant);
    }
    Ok(p.constant_term())
}

/// Coerces a `K`-polynomial to `ℤ[Z]`, returning the first offending
/// coefficient otherwise.
pub fn to_integer_poly(p: &KPoly) -> Result<ZPoly, NumberFieldElement> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        match c.as_integer() {
            Some(n) => coeffs.push(n),
            None => return Err(c.clone()),
        }
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Embeds an integer polynomial into `K[Z]`.
pub fn from_integer_poly(p: &ZPoly, field: &Arc<FieldDescriptor>) -> KPoly {
    p.map(|c| {
        if c.is_zero() {
            NumberFieldElement::zero()
        } else {
            NumberFieldElement::from_integer(c.clone()).in_field(field)
        }
    })
}
