use std::fmt;

use serde::Serialize;

use super::{BuchiForm, FuncFieldError, RatFunc};
use crate::fields::Field;
use crate::poly::{squarefree_decompose, Poly, SquarefreeDecomposition};

/// Zeros of a nonzero rational function on P^1. Poles are not recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroProfile<F> {
    pub finite: SquarefreeDecomposition<F>,
    /// `deg den - deg num` when positive, else 0.
    pub order_at_infinity: u32,
}

impl<F: Field> ZeroProfile<F> {
    pub fn multiplicities(&self) -> impl Iterator<Item = u32> + '_ {
        let inf = (self.order_at_infinity > 0).then_some(self.order_at_infinity);
        self.finite.parts.iter().map(|(_, m)| *m).chain(inf)
    }

    pub fn has_zeros(&self) -> bool {
        self.multiplicities().next().is_some()
    }

    /// Smallest zero multiplicity, `None` if there are no zeros.
    pub fn min_multiplicity(&self) -> Option<u32> {
        self.multiplicities().min()
    }

    pub fn level(&self) -> PowerLevel {
        match self.min_multiplicity() {
            Some(m) => PowerLevel::Bounded(m),
            None => PowerLevel::Unbounded,
        }
    }

    pub fn total_zero_degree(&self) -> usize {
        self.finite
            .parts
            .iter()
            .map(|(g, m)| g.deg().unwrap_or(0) * *m as usize)
            .sum::<usize>()
            + self.order_at_infinity as usize
    }

    pub fn is_k_powerful(&self, k: u32) -> bool {
        self.multiplicities().all(|m| m >= k)
    }
}

/// Largest k for which a function is k-powerful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerLevel {
    Bounded(u32),
    /// No zeros at all: k-powerful for every k.
    Unbounded,
}

impl PowerLevel {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            PowerLevel::Bounded(m) => m >= k,
            PowerLevel::Unbounded => true,
        }
    }
}

impl fmt::Display for PowerLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerLevel::Bounded(m) => write!(f, "{m}"),
            PowerLevel::Unbounded => f.write_str("inf"),
        }
    }
}

impl Serialize for PowerLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PowerLevel::Bounded(m) => s.serialize_u32(*m),
            PowerLevel::Unbounded => s.serialize_str("inf"),
        }
    }
}

pub fn zero_profile<F: Field>(f: &RatFunc<F>) -> Result<ZeroProfile<F>, FuncFieldError> {
    if f.is_zero() {
        return Err(FuncFieldError::ZeroFunction);
    }
    let finite = squarefree_decompose(f.numer())?;
    let dn = f.numer().deg().unwrap_or(0);
    let dd = f.denom().deg().unwrap_or(0);
    Ok(ZeroProfile {
        finite,
        order_at_infinity: dd.saturating_sub(dn) as u32,
    })
}

/// `Err(ZeroFunction)` for the zero function, which is neither.
pub fn is_k_powerful<F: Field>(f: &RatFunc<F>, k: u32) -> Result<bool, FuncFieldError> {
    Ok(zero_profile(f)?.is_k_powerful(k))
}

pub fn power_level<F: Field>(f: &RatFunc<F>) -> Result<PowerLevel, FuncFieldError> {
    Ok(zero_profile(f)?.level())
}

/// Squarefree decomposition of `F(t)` over F(x).
pub fn multiplicity_profile<F: Field>(
    form: &BuchiForm<F>,
) -> Result<SquarefreeDecomposition<RatFunc<F>>, FuncFieldError> {
    Ok(squarefree_decompose(&form.as_poly())?)
}

/// `Some(nu)` iff `F(t) = (t + nu)^n` with `nu = a_{n-1} / n`.
pub fn power_of_linear<F: Field>(form: &BuchiForm<F>) -> Option<RatFunc<F>> {
    let n = form.n();
    let a = &form.coeffs()[n - 1];
    let nu = a.div(&a.from_i64_like(n as i64)).ok()?;
    let lin = Poly::linear_monic(nu.clone());
    (lin.pow(n as u64) == form.as_poly()).then_some(nu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification<F> {
    ConstantCoefficients,
    PowerOfLinear(RatFunc<F>),
    Other,
}

impl<F: Field> Classification<F> {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::ConstantCoefficients => "ConstantCoefficients",
            Classification::PowerOfLinear(_) => "PowerOfLinear",
            Classification::Other => "Other",
        }
    }

    pub fn is_exceptional(&self) -> bool {
        !matches!(self, Classification::Other)
    }
}

/// Constant coefficients win over a power of a linear form. The
/// power-of-linear verdict is cross-checked against the multiplicity
/// profile; a mismatch is an error, never silently resolved.
pub fn classify<F: Field>(form: &BuchiForm<F>) -> Result<Classification<F>, FuncFieldError> {
    if form.has_constant_coefficients() {
        return Ok(Classification::ConstantCoefficients);
    }
    let direct = power_of_linear(form);
    let profile = multiplicity_profile(form)?;
    let by_profile = profile.max_multiplicity() == Some(form.n() as u32);
    if direct.is_some() != by_profile {
        return Err(FuncFieldError::CriterionDisagreement(form.to_string()));
    }
    Ok(match direct {
        Some(nu) => Classification::PowerOfLinear(nu),
        None => Classification::Other,
    })
}
