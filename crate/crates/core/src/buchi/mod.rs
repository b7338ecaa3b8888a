//! Büchi sequences, powerful-value censuses, the exact powerful locus,
//! the theorem harness and the integer search.

mod census;
mod harness;
mod locus;
mod search;
mod sequence;

use thiserror::Error;

use crate::bounds::DomainError;
use crate::fields::FieldError;
use crate::funcfield::FuncFieldError;
use crate::poly::PolyError;

pub use census::{census, CensusReport, Verdict};
pub use harness::{power_form, theorem_harness, HarnessConfig, HarnessReport};
pub use locus::{exact_powerful_locus, Locus, LocusJson};
pub use search::{
    extend_seed, is_trivial, search_integer_buchi, verify_sequence, SquareSequence, DEFAULT_MAX_LEN,
};
pub use sequence::{nth_differences, sequence_to_form, FormFit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuchiError {
    #[error("sequence too short: need {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("locus is infinite: {0}")]
    InfiniteLocus(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("candidate polynomial vanishes identically for {0}")]
    VanishingCandidatePolynomial(String),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl From<FieldError> for BuchiError {
    fn from(e: FieldError) -> Self {
        BuchiError::FuncField(e.into())
    }
}
