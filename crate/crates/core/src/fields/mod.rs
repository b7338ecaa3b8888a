//! Exact scalar fields.
//!
//! Every polynomial routine in this crate is generic over [`Field`]. Fields
//! whose elements need runtime parameters (a prime modulus, an extension
//! modulus) carry them inside each element, so constants are always built
//! from an existing element via [`Field::zero_like`] / [`Field::one_like`].

mod algebraic;
mod fq;
mod prime;
mod rational;

use std::fmt;

use crate::poly::Poly;

pub use algebraic::{split_over_roots, AlgContext, AlgElement};
pub use fq::{make_fq, FqContext, FqElement};
pub use prime::{is_prime, Fp, PrimeField};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("no irreducible polynomial found (p = {p}, e = {e})")]
    IrreducibleSearchFailed { p: u64, e: u32 },
    /// Raised by [`AlgElement`] when an inverse is requested for a nonzero
    /// zero divisor. Carries the coefficients (lowest first) of a proper
    /// monic factor of the modulus.
    #[error("zero divisor found; modulus splits")]
    ZeroDivisor(Vec<Rational>),
    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
}

/// The field contract consumed by all polynomial code.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Image of the integer `n` in the field of `self`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, n: i64) -> Self;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Whether `self` and `other` live in the same field instance.
    fn same_field(&self, _other: &Self) -> bool {
        true
    }

    /// Unique p-th root in a perfect field of characteristic p. `None` when
    /// the field is not perfect or has characteristic zero.
    fn pth_root(&self) -> Option<Self> {
        None
    }

    /// True when the printed form can be juxtaposed with `*x^k` without
    /// parentheses.
    fn is_atomic(&self) -> bool {
        true
    }

    /// Monic gcd by a field-specific method, or `None` to fall back to
    /// Euclid's algorithm. Both inputs are nonzero.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
