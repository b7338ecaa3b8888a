//! The rational function field F(x), forms in F(x)[t] and the zero
//! profiles read by the powerfulness predicates.

mod form;
mod profile;
mod ratfunc;

pub use form::{BuchiForm, ProjPoint};
pub use profile::{
    classify, is_k_powerful, multiplicity_profile, power_level, power_of_linear, zero_profile,
    Classification, PowerLevel, ZeroProfile,
};
pub use ratfunc::RatFunc;

use crate::fields::FieldError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuncFieldError {
    #[error("the zero function has no zero profile")]
    ZeroFunction,
    #[error("a form needs degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("form polynomial is not monic")]
    NotMonic,
    #[error("power-of-linear test and multiplicity profile disagree on {0}")]
    CriterionDisagreement(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<FieldError> for FuncFieldError {
    fn from(e: FieldError) -> Self {
        FuncFieldError::Poly(PolyError::Field(e))
    }
}
