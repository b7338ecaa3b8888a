//! Dense univariate polynomials over any [`Field`].
//!
//! Coefficients are stored lowest degree first. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! coefficient is nonzero. The variable is implicit; printing takes its name
//! as an argument.

mod resultant;
mod roots;
mod squarefree;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::fields::{Field, FieldError};

pub use resultant::{discriminant, resultant};
pub use roots::{rational_roots, split_rational_roots, RationalRootSplit};
pub use squarefree::{
    distinct_root_count, squarefree_decompose, squarefree_decompose_strict, ProfileEntry,
    SquarefreeDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree too small")]
    DegreeTooSmall,
    #[error("coefficients belong to different fields")]
    FieldMismatch,
    #[error("division is not exact")]
    NotDivisible,
    #[error("input has a p-th power part in characteristic {0} (strict mode)")]
    CharPUnsupportedShape(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`,
/// which is smaller than every finite degree and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Field::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        Poly { coeffs }.trim()
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `X + c`.
    pub fn linear_monic(c: F) -> Self {
        let one = c.one_like();
        Self::from_coeffs(vec![c, one])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Finite degree, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(Field::is_one)
    }

    fn any_coeff(&self) -> Option<&F> {
        self.coeffs.first()
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        match (self.any_coeff(), other.any_coeff()) {
            (Some(a), Some(b)) if !a.same_field(b) => Err(PolyError::FieldMismatch),
            _ => Ok(()),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        match self.any_coeff() {
            None => Self::zero(),
            Some(c) => {
                let mut coeffs = vec![c.zero_like(); k];
                coeffs.extend(self.coeffs.iter().cloned());
                Poly { coeffs }
            }
        }
    }

    /// `self^k`; by convention `0^0` is returned as the zero polynomial
    /// since no field context is available.
    pub fn pow(&self, mut k: u64) -> Self {
        let Some(c) = self.any_coeff() else {
            return Self::zero();
        };
        let mut acc = Self::constant(c.one_like());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
                .collect(),
        )
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Poly<G>, E> {
        Ok(Poly::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }

    /// Returns `(lc, self / lc)`.
    pub fn monic_parts(&self) -> Result<(F, Self), PolyError> {
        let lc = self.lc().ok_or(PolyError::ZeroPolynomial)?.clone();
        if lc.is_one() {
            return Ok((lc, self.clone()));
        }
        let inv = lc.inv()?;
        Ok((lc, self.scale(&inv)))
    }

    pub fn monic(&self) -> Result<Self, PolyError> {
        Ok(self.monic_parts()?.1)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_compatible(divisor)?;
        let dlc = divisor.lc().ok_or(PolyError::DivisionByZero)?;
        let dn = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = dlc.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![dlc.zero_like(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool, PolyError> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        if !self.is_zero() && !other.is_zero() {
            if let Some(g) = F::poly_gcd(self, other) {
                return Ok(g);
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self), PolyError> {
        self.check_compatible(other)?;
        let one = match self.any_coeff().or(other.any_coeff()) {
            Some(c) => c.one_like(),
            None => return Ok((Self::zero(), Self::zero(), Self::zero())),
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(one.clone()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = r0.lc().expect("nonzero").inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// For `f(X) = g(X^p)` in characteristic p over a perfect field, returns
    /// the h with `h^p = f`.
    pub fn pth_root(&self) -> Option<Self> {
        let c = self.any_coeff()?;
        let p = c.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(a.pth_root()?);
            } else if !a.is_zero() {
                return None;
            }
        }
        Some(Self::from_coeffs(out))
    }

    /// Canonical text form in the variable `var`, highest degree first, e.g.
    /// `3/2*x^2-x+1`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            if !c.is_atomic() {
                text = format!("({text})");
            }
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&power);
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&power);
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                $tr::$method(&self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Orders polynomials by degree, then coefficientwise from the top using the
/// printed form; only used for deterministic report ordering.
pub fn canonical_cmp<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.fmt_var("x").cmp(&b.fmt_var("x")))
}
