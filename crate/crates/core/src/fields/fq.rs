use std::fmt;
use std::sync::Arc;

use super::{Field, FieldError, Fp, PrimeField};
use crate::poly::Poly;

/// F_q = F_p[y]/(m) for a monic irreducible `m` of degree `e`.
#[derive(Debug, PartialEq, Eq)]
pub struct FqContext {
    base: PrimeField,
    e: u32,
    modulus: Poly<Fp>,
}

/// Builds F_{p^e}. The modulus is the first monic irreducible polynomial of
/// degree `e` in lexicographic order (constant term varying fastest), so the
/// same `(p, e)` always yields the same context.
pub fn make_fq(p: u64, e: u32) -> Result<Arc<FqContext>, FieldError> {
    let base = PrimeField::new(p)?;
    if e == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let count = p
        .checked_pow(e)
        .ok_or(FieldError::IrreducibleSearchFailed { p, e })?;
    for index in 0..count {
        let mut coeffs = digits(index, p, e as usize)
            .into_iter()
            .map(|d| base.element(d as i64))
            .collect::<Vec<_>>();
        coeffs.push(base.one());
        let candidate = Poly::from_coeffs(coeffs);
        if is_irreducible(&candidate, p) {
            return Ok(Arc::new(FqContext {
                base,
                e,
                modulus: candidate,
            }));
        }
    }
    Err(FieldError::IrreducibleSearchFailed { p, e })
}

fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

/// Ben-Or test: `m` of degree e is irreducible iff gcd(m, y^{p^i} - y) = 1
/// for every i <= e/2.
fn is_irreducible(m: &Poly<Fp>, p: u64) -> bool {
    let e = m.deg().unwrap_or(0);
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let one = m.lc().expect("nonzero").one_like();
    let y = Poly::monomial(one, 1);
    let mut power = y.clone();
    for _ in 1..=e / 2 {
        power = pow_mod(&power, p, m);
        let diff = &power - &y;
        let g = diff.gcd(m).expect("same field");
        if g.deg() != Some(0) {
            return false;
        }
    }
    true
}

fn pow_mod(base: &Poly<Fp>, mut exp: u64, m: &Poly<Fp>) -> Poly<Fp> {
    let one = m.lc().expect("nonzero").one_like();
    let mut acc = Poly::constant(one);
    let mut b = base.rem(m).expect("nonzero modulus");
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (&acc * &b).rem(m).expect("nonzero modulus");
        }
        exp >>= 1;
        if exp > 0 {
            b = (&b * &b).rem(m).expect("nonzero modulus");
        }
    }
    acc
}

impl FqContext {
    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.base.p().pow(self.e)
    }

    pub fn modulus(&self) -> &Poly<Fp> {
        &self.modulus
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// Reduces an arbitrary polynomial in y into the field.
    pub fn element(self: &Arc<Self>, value: &Poly<Fp>) -> FqElement {
        let value = value.rem(&self.modulus).expect("nonzero modulus");
        FqElement {
            ctx: Arc::clone(self),
            value,
        }
    }

    pub fn from_base(self: &Arc<Self>, c: Fp) -> FqElement {
        self.element(&Poly::constant(c))
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FqElement {
        self.from_base(self.base.element(n))
    }

    /// The class of y.
    pub fn generator(self: &Arc<Self>) -> FqElement {
        self.element(&Poly::monomial(self.base.one(), 1))
    }

    /// All q elements, ordered by their coefficient digits.
    pub fn elements(self: &Arc<Self>) -> Vec<FqElement> {
        let p = self.base.p();
        (0..self.order())
            .map(|index| {
                let coeffs = digits(index, p, self.e as usize)
                    .into_iter()
                    .map(|d| self.base.element(d as i64))
                    .collect();
                FqElement {
                    ctx: Arc::clone(self),
                    value: Poly::from_coeffs(coeffs),
                }
            })
            .collect()
    }
}

/// Element of F_p[y]/(m), stored as a reduced polynomial in y.
#[derive(Clone, Debug)]
pub struct FqElement {
    ctx: Arc<FqContext>,
    value: Poly<Fp>,
}

impl FqElement {
    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn value(&self) -> &Poly<Fp> {
        &self.value
    }

    /// Frobenius: a -> a^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p())
    }

    fn with(&self, value: Poly<Fp>) -> Self {
        FqElement {
            ctx: Arc::clone(&self.ctx),
            value,
        }
    }

    fn reduce(&self, value: Poly<Fp>) -> Self {
        self.with(value.rem(&self.ctx.modulus).expect("nonzero modulus"))
    }
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.value == other.value
    }
}

impl Eq for FqElement {}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.fmt_var("y"))
    }
}

impl Field for FqElement {
    fn zero_like(&self) -> Self {
        self.with(Poly::zero())
    }
    fn one_like(&self) -> Self {
        self.with(Poly::constant(self.ctx.base.one()))
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
        debug_assert_eq!(g.deg(), Some(0), "modulus must be irreducible");
        Ok(self.reduce(s))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.from_i64(n)
    }
    fn characteristic(&self) -> u64 {
        self.ctx.p()
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
    fn pth_root(&self) -> Option<Self> {
        // a^(q/p) is the inverse of Frobenius on F_q.
        Some(self.pow(self.ctx.order() / self.ctx.p()))
    }
    fn is_atomic(&self) -> bool {
        self.value.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}
