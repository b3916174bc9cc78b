//! Chebyshev pairs, cyclotomic polynomials and root-of-unity polynomials.

mod cheb;
mod cyclo;
pub mod numtheory;

pub use cheb::{chebyshev_at, chebyshev_pair, pell_recognize, verify_cheb_power, y_at_one, ChebPair};
pub use cyclo::{
    cyclo_low_terms, cyclotomic, cyclotomic_series, find_cyclotomic_prefix, recognize_c,
    CycloFactorization, PrefixCandidates,
};
pub use numtheory::{euler_phi, moebius};
pub(crate) use cyclo::mul_cyclotomic_series;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecialError {
    #[error("T must be non-constant")]
    ConstantModulus,
}
