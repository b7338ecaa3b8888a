use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, FieldError};
use crate::poly::Poly;

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, FieldError> {
        Self::from_bigints(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, FieldError> {
        if denom.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i64(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    /// Accepts `a` or `a/b` with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::InvalidLiteral(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_bigints(n, d)
            }
            None => Ok(Rational::from_bigint(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::from_i64(n)
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(primitive_prs_gcd(a, b))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Integer coefficients of `c * p` made primitive with positive leading term.
fn primitive_part(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(lc) = v.last() else { return v };
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lc.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// Pseudo-remainder of `f` by `g`, both nonzero.
fn pseudo_rem(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let dg = g.len() - 1;
    let glc = &g[dg];
    let mut r = f.to_vec();
    while r.len() > dg && !r.is_empty() {
        let top = r.len() - 1;
        let rlc = r[top].clone();
        let shift = top - dg;
        for c in r.iter_mut() {
            *c *= glc;
        }
        for (j, gc) in g.iter().enumerate() {
            r[shift + j] -= &rlc * gc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Monic gcd in Q[x] via the primitive remainder sequence over Z, which
/// keeps coefficients as small as the gcd allows.
fn primitive_prs_gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    let (mut f, mut g) = (primitive_part(a), primitive_part(b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = make_primitive(pseudo_rem(&f, &g));
        f = g;
        g = r;
    }
    let lc = Rational::from_bigint(f.last().expect("nonzero input").clone());
    Poly::from_coeffs(f.into_iter().map(|c| Rational::from_bigint(c).checked_div(&lc).unwrap()).collect())
}
