//! Exact constructions and verifiers for diophantine definitions over
//! polynomial rings `R[Z]`, where `R` is a subring of a number field.

pub mod approx;
pub mod arith;
pub mod cert;
pub mod cli;
pub mod encode;
pub mod poly;
pub mod qf;
pub mod scalar;
pub mod special;
pub mod text;
pub mod witness;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use arith::{FieldDescriptor, NumberFieldElement};
pub use poly::{Polynomial, RationalFunction, Valuation};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type ZPoly = Polynomial<BigInt>;
pub type QPoly = Polynomial<BigRational>;
pub type KPoly = Polynomial<NumberFieldElement>;
pub type KRatFunc = RationalFunction<NumberFieldElement>;
