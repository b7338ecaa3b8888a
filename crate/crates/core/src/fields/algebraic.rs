//! Arithmetic in Q[z]/(m) for a squarefree (not necessarily irreducible)
//! modulus `m`, used to reason exactly about all roots of `m` at once.
//!
//! Q[z]/(m) is a product of fields. Inverting a nonzero zero divisor fails
//! with [`FieldError::ZeroDivisor`] carrying a proper factor of `m`;
//! [`split_over_roots`] catches that, splits the modulus, and reruns the
//! computation on each piece. Every returned piece is a modulus on whose
//! roots the computation behaves uniformly.

use std::fmt;
use std::sync::Arc;

use super::{Field, FieldError, Rational};
use crate::poly::{Poly, PolyError};

#[derive(Debug, PartialEq, Eq)]
pub struct AlgContext {
    modulus: Poly<Rational>,
}

impl AlgContext {
    /// `modulus` is made monic; it must be nonconstant and squarefree.
    pub fn new(modulus: &Poly<Rational>) -> Result<Arc<Self>, PolyError> {
        let modulus = modulus.monic()?;
        if modulus.deg() == Some(0) {
            return Err(PolyError::DegreeTooSmall);
        }
        Ok(Arc::new(AlgContext { modulus }))
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    pub fn element(self: &Arc<Self>, value: &Poly<Rational>) -> AlgElement {
        AlgElement {
            ctx: Arc::clone(self),
            value: value.rem(&self.modulus).expect("nonzero modulus"),
        }
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> AlgElement {
        self.element(&Poly::constant(c))
    }

    /// The class of z, i.e. a generic root of the modulus.
    pub fn root(self: &Arc<Self>) -> AlgElement {
        self.element(&Poly::monomial(Rational::one(), 1))
    }
}

#[derive(Clone, Debug)]
pub struct AlgElement {
    ctx: Arc<AlgContext>,
    value: Poly<Rational>,
}

impl AlgElement {
    pub fn value(&self) -> &Poly<Rational> {
        &self.value
    }

    fn with(&self, value: Poly<Rational>) -> Self {
        AlgElement {
            ctx: Arc::clone(&self.ctx),
            value,
        }
    }

    fn reduce(&self, value: Poly<Rational>) -> Self {
        self.with(value.rem(&self.ctx.modulus).expect("nonzero modulus"))
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
            && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl Eq for AlgElement {}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.fmt_var("z"))
    }
}

impl Field for AlgElement {
    fn zero_like(&self) -> Self {
        self.with(Poly::zero())
    }
    fn one_like(&self) -> Self {
        self.with(Poly::constant(Rational::one()))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.with(&self.value + &rhs.value)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.with(&self.value - &rhs.value)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.reduce(&self.value * &rhs.value)
    }
    fn neg(&self) -> Self {
        self.with(-&self.value)
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.value.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = self
            .value
            .extended_gcd(&self.ctx.modulus)
            .map_err(|_| FieldError::FieldMismatch)?;
        if g.deg() != Some(0) {
            return Err(FieldError::ZeroDivisor(g.into_coeffs()));
        }
        Ok(self.reduce(s))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.with(Poly::constant(Rational::from_i64(n)))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
    fn is_atomic(&self) -> bool {
        self.value.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

/// Runs `f` over Q[z]/(m), splitting `m` whenever a zero divisor shows up.
/// The returned moduli are pairwise coprime and multiply to `m` (made monic).
pub fn split_over_roots<T>(
    modulus: &Poly<Rational>,
    mut f: impl FnMut(&Arc<AlgContext>) -> Result<T, PolyError>,
) -> Result<Vec<(Poly<Rational>, T)>, PolyError> {
    let mut stack = vec![modulus.monic()?];
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        if m.deg() == Some(0) {
            continue;
        }
        let ctx = AlgContext::new(&m)?;
        match f(&ctx) {
            Ok(v) => out.push((m, v)),
            Err(PolyError::Field(FieldError::ZeroDivisor(coeffs))) => {
                let g = Poly::from_coeffs(coeffs).gcd(&m)?;
                let d = g.deg().unwrap_or(0);
                if d == 0 || Some(d) == m.deg() {
                    return Err(PolyError::Field(FieldError::ZeroDivisor(g.into_coeffs())));
                }
                let h = m.exact_div(&g)?;
                stack.push(h);
                stack.push(g);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    #[test]
    fn inverse_in_field_extension() {
        // Q(sqrt 2): (1 + z)^{-1} = z - 1
        let ctx = AlgContext::new(&q(&[-2, 0, 1])).unwrap();
        let a = ctx.element(&q(&[1, 1]));
        assert_eq!(a.inv().unwrap(), ctx.element(&q(&[-1, 1])));
    }

    #[test]
    fn zero_divisor_reports_factor() {
        // Q[z]/((z-1)(z-2)): z - 1 is a zero divisor
        let ctx = AlgContext::new(&q(&[2, -3, 1])).unwrap();
        let a = ctx.element(&q(&[-1, 1]));
        match a.inv() {
            Err(FieldError::ZeroDivisor(c)) => assert_eq!(Poly::from_coeffs(c), q(&[-1, 1])),
            other => panic!("expected zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn splitting_separates_roots() {
        // Is z - 1 invertible? Uniform answer only after splitting.
        let m = q(&[-2, 0, 1]);
        let full = &(&m * &q(&[-1, 1])) * &q(&[-2, 1]);
        let invertible = |a: AlgElement| match a.inv() {
            Ok(_) => Ok(true),
            Err(FieldError::DivisionByZero) => Ok(false),
            Err(e) => Err(PolyError::Field(e)),
        };
        let pieces = split_over_roots(&full, |ctx| {
            let z = ctx.root();
            Ok(invertible(z.sub(&z.one_like()))? && invertible(z.sub(&z.from_i64_like(2)))?)
        })
        .unwrap();
        let mut degs: Vec<(usize, bool)> = pieces.iter().map(|(m, v)| (m.deg().unwrap(), *v)).collect();
        degs.sort();
        assert_eq!(degs, vec![(1, false), (1, false), (2, true)]);
        let product = pieces.iter().fold(q(&[1]), |acc, (m, _)| &acc * m);
        assert_eq!(product, full);
    }
}
