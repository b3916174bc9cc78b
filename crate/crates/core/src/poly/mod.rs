//! Dense univariate polynomials in `Z` and normalized rational functions.

mod dense;
pub(crate) mod modular;
mod ratfunc;

pub use dense::{clear_denominators, Polynomial, VarDisplay};
pub use ratfunc::{RationalFunction, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("leading coefficient of the divisor is not a unit")]
    NonUnitLeading,
}
