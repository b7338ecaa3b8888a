use std::fmt;

use crate::fields::{Field, FieldError, Rational};
use crate::poly::{Poly, PolyError};

/// Element of F(x): a reduced fraction with monic denominator. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, PolyError> {
        num.check_compatible(&den)?;
        let dlc = den.lc().ok_or(PolyError::DivisionByZero)?.clone();
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::constant(dlc.one_like()),
            });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.deg() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let inv = den.lc().expect("nonzero").inv()?;
        Ok(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    /// `num / den` already in lowest terms; only the denominator is made monic.
    fn reduced(num: Poly<F>, den: Poly<F>) -> Self {
        let inv = den.lc().expect("nonzero denominator").inv().expect("nonzero");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
        .normalize_zero()
    }

    /// The polynomial `num` as a fraction; `like` supplies the field for
    /// the denominator `1` when `num` is zero.
    pub fn from_poly(num: Poly<F>, like: &F) -> Self {
        RatFunc {
            num,
            den: Poly::constant(like.one_like()),
        }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    /// The generator x.
    pub fn x(like: &F) -> Self {
        Self::from_poly(Poly::monomial(like.one_like(), 1), like)
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn scalar(&self) -> F {
        self.den.lc().expect("denominator nonzero").clone()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == Some(0)
    }

    /// Constant in x (an element of the base field).
    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<F> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .first()
                .cloned()
                .unwrap_or_else(|| self.scalar().zero_like()),
        )
    }

    /// Degree as a map P^1 -> P^1: `max(deg num, deg den)`.
    pub fn map_degree(&self) -> usize {
        self.num.deg().unwrap_or(0).max(self.den.deg().unwrap_or(0))
    }

    pub fn eval(&self, a: &F) -> Result<F, FieldError> {
        self.num.eval(a).div(&self.den.eval(a))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let n = self.num.fmt_var(var);
        if self.is_polynomial() {
            return n;
        }
        let wrap = |p: &Poly<F>, s: String| {
            let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if terms > 1 || p.coeffs().iter().any(|c| !c.is_zero() && !c.is_atomic()) {
                format!("({s})")
            } else {
                s
            }
        };
        let d = self.den.fmt_var(var);
        format!("{}/{}", wrap(&self.num, n), wrap(&self.den, d))
    }
}

impl RatFunc<Rational> {
    pub fn from_poly_q(num: Poly<Rational>) -> Self {
        Self::from_poly(num, &Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(Poly::zero(), &self.scalar())
    }
    fn one_like(&self) -> Self {
        RatFunc::constant(self.scalar().one_like())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        // With g = gcd of the denominators, only g can cancel.
        let g = self.den.gcd(&rhs.den).expect("nonzero denominator");
        if g.deg() == Some(0) {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::reduced(num, &self.den * &rhs.den);
        }
        let (a, b) = (self.den.exact_div(&g).expect("divides"), rhs.den.exact_div(&g).expect("divides"));
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::new(num, &(&a * &b) * &g).expect("nonzero denominator")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: self.den.clone(),
            }
            .normalize_zero();
        }
        if self.num.is_zero() || rhs.num.is_zero() {
            return self.zero_like();
        }
        // Cross cancellation keeps the gcds small.
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let div = |p: &Poly<F>, g: &Poly<F>| {
            if g.deg() == Some(0) {
                p.clone()
            } else {
                p.exact_div(g).expect("divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFunc::reduced(num, den)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone()).map_err(|e| match e {
            PolyError::Field(f) => f,
            _ => FieldError::FieldMismatch,
        })
    }
    fn from_i64_like(&self, n: i64) -> Self {
        RatFunc::constant(self.scalar().from_i64_like(n))
    }
    fn characteristic(&self) -> u64 {
        self.scalar().characteristic()
    }
    fn same_field(&self, other: &Self) -> bool {
        self.scalar().same_field(&other.scalar())
    }
    fn is_atomic(&self) -> bool {
        self.is_polynomial()
            && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
            && self.num.coeffs().iter().all(|c| c.is_atomic())
    }
}

impl<F: Field> RatFunc<F> {
    fn normalize_zero(self) -> Self {
        if self.num.is_zero() {
            let one = self.scalar().one_like();
            return RatFunc {
                num: self.num,
                den: Poly::constant(one),
            };
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;
    use crate::poly::tests::q;
    use proptest::prelude::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rational> {
        RatFunc::new(q(n), q(d)).unwrap()
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // x^2 / (2x) = x/2
        let f = rf(&[0, 0, 1], &[0, 2]);
        assert_eq!(f.numer(), &q(&[0, 1]).scale(&Rational::new(1, 2).unwrap()));
        assert_eq!(f.denom(), &q(&[1]));
        assert_eq!(f.to_string(), "1/2*x");
        let g = rf(&[1, 0, 1], &[-3, 1]);
        assert_eq!(g.to_string(), "(x^2+1)/(x-3)");
        assert_eq!(rf(&[], &[5, 1]), RatFunc::from_poly_q(q(&[])));
        assert_eq!(RatFunc::new(q(&[1]), q(&[])), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[0, 1]); // 1/x
        let b = rf(&[1], &[1, 1]); // 1/(x+1)
        assert_eq!(a.add(&b), rf(&[1, 2], &[0, 1, 1]));
        assert_eq!(a.mul(&b).inv().unwrap(), RatFunc::from_poly_q(q(&[0, 1, 1])));
        assert_eq!(a.sub(&a), a.zero_like());
        assert_eq!(a.zero_like().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(a.map_degree(), 1);
        assert_eq!(a.eval(&Rational::from_i64(4)).unwrap(), Rational::new(1, 4).unwrap());
    }

    #[test]
    fn over_prime_field() {
        let f5 = PrimeField::new(5).unwrap();
        let x = RatFunc::x(&f5.one());
        let five_x = x.mul(&x.from_i64_like(5));
        assert!(five_x.is_zero());
        assert_eq!(x.characteristic(), 5);
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc<Rational>> {
        (prop::collection::vec(-4i64..5, 0..4), prop::collection::vec(-4i64..5, 1..4))
            .prop_filter("nonzero denominator", |(_, d)| d.iter().any(|&c| c != 0))
            .prop_map(|(n, d)| rf(&n, &d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            prop_assert!(a.denom().is_monic());
            prop_assert_eq!(a.numer().gcd(a.denom()).unwrap().deg(), Some(0));
        }
    }
}
