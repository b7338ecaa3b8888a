use std::fmt;

use super::{FuncFieldError, RatFunc};
use crate::fields::{Field, FieldError};
use crate::poly::Poly;

/// `F(t) = t^n + a_{n-1} t^{n-1} + ... + a_0` with coefficients in F(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiForm<F> {
    coeffs: Vec<RatFunc<F>>,
}

impl<F: Field> BuchiForm<F> {
    /// `coeffs` are `a_0..a_{n-1}`, lowest first; `n = coeffs.len() >= 2`.
    pub fn new(coeffs: Vec<RatFunc<F>>) -> Result<Self, FuncFieldError> {
        if coeffs.len() < 2 {
            return Err(FuncFieldError::DegreeTooSmall(coeffs.len()));
        }
        Ok(BuchiForm { coeffs })
    }

    /// From a monic polynomial in t.
    pub fn from_poly(p: &Poly<RatFunc<F>>) -> Result<Self, FuncFieldError> {
        if !p.is_monic() {
            return Err(FuncFieldError::NotMonic);
        }
        let mut coeffs = p.coeffs().to_vec();
        coeffs.pop();
        Self::new(coeffs)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc<F>] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> Poly<RatFunc<F>> {
        let mut c = self.coeffs.clone();
        c.push(self.coeffs[0].one_like());
        Poly::from_coeffs(c)
    }

    /// `F(s0, t0) = s0^n + a_{n-1} s0^{n-1} t0 + ... + a_0 t0^n` for raw
    /// homogeneous coordinates, not normalized.
    pub fn evaluate_coords(&self, s0: &F, t0: &F) -> RatFunc<F> {
        let n = self.n();
        let mut acc = RatFunc::constant(s0.pow(n as u64));
        for (i, a) in self.coeffs.iter().enumerate() {
            let w = s0.pow(i as u64).mul(&t0.pow((n - i) as u64));
            if !w.is_zero() {
                acc = acc.add(&a.mul(&RatFunc::constant(w)));
            }
        }
        acc
    }

    pub fn evaluate(&self, b: &ProjPoint<F>) -> RatFunc<F> {
        match b {
            ProjPoint::Affine(lambda) => self.evaluate_coords(lambda, &lambda.one_like()),
            ProjPoint::Infinity => self.coeffs[0].one_like(),
        }
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_constant)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        self.as_poly().fmt_var(var)
    }
}

impl<F: Field> fmt::Display for BuchiForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

/// A point of P^1 normalized to `[lambda : 1]` or `[1 : 0]`.
///
/// The first coordinate is the one substituted for t, so `[lambda : 1]`
/// evaluates a form to `F(lambda)` and `[1 : 0]` to the leading
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint<F> {
    Affine(F),
    Infinity,
}

impl<F: Field> ProjPoint<F> {
    pub fn from_coords(s0: &F, t0: &F) -> Result<Self, FuncFieldError> {
        if !t0.is_zero() {
            return Ok(ProjPoint::Affine(s0.div(t0)?));
        }
        if s0.is_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        Ok(ProjPoint::Infinity)
    }

    pub fn affine(&self) -> Option<&F> {
        match self {
            ProjPoint::Affine(l) => Some(l),
            ProjPoint::Infinity => None,
        }
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Affine(l) => write!(f, "[{l}:1]"),
            ProjPoint::Infinity => f.write_str("[1:0]"),
        }
    }
}
