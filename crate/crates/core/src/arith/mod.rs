//! Number fields `K = ℚ[t]/(m(t))`, integrality, and certified complex
//! absolute values.

mod element;
mod embed;
mod field;
mod minpoly;

pub use element::NumberFieldElement;
pub use embed::{
    abs_bound_leq, embeddings, real_root_count, sqrt_minus_one, ComplexBall, TriState,
    MAX_PRECISION, MIN_PRECISION, START_PRECISION,
};
pub use field::{FieldDescriptor, Irreducibility};
pub use minpoly::minimal_polynomial_of;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("defining polynomial must have degree at least 1")]
    ConstantModulus,
    #[error("defining polynomial is reducible over Q")]
    Reducible,
    #[error("invalid generator symbol {0:?}")]
    BadSymbol(String),
    #[error("precision {0} is below the minimum of 16 bits")]
    PrecisionTooLow(u64),
    #[error("roots could not be isolated at the maximum precision")]
    IsolationFailure,
}

pub fn is_algebraic_integer(beta: &NumberFieldElement) -> bool {
    beta.is_algebraic_integer()
}
