//! Ramification of rational maps P^1 -> P^1 over Q: branch data, the
//! Riemann-Hurwitz defect sum, the Zeuthen identity for parametrized
//! correspondences, and the census of totally multiple fibers of `s + c t`.
//!
//! Over a finite λ the fiber of `u = N/D` is the root set of
//! `H_λ = N - λD` in P^1, where the source point ∞ belongs to the fiber
//! exactly when `deg H_λ < deg u`. Finite branch values are roots of
//! `disc_x(H_λ)` together with `u(∞)`. Irrational branch values are treated
//! exactly through [`split_over_roots`].

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fields::{split_over_roots, AlgContext, AlgElement, Field, FieldError, Rational};
use crate::funcfield::{zero_profile, FuncFieldError, ProjPoint, RatFunc};
use crate::poly::{discriminant, distinct_root_count, split_rational_roots, squarefree_decompose, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("map is constant")]
    ConstantMap,
    #[error("input is constant")]
    ConstantInput,
    #[error("lemma bound exceeded: {0} totally multiple fibers")]
    BoundExceeded(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<FieldError> for GeometryError {
    fn from(e: FieldError) -> Self {
        GeometryError::Poly(e.into())
    }
}

fn unwrap_ff(e: FuncFieldError) -> PolyError {
    match e {
        FuncFieldError::Poly(p) => p,
        other => PolyError::Field(FieldError::InvalidLiteral(other.to_string())),
    }
}

type Q = Rational;

fn coeff(p: &Poly<Q>, i: usize) -> Q {
    p.coeff(i).cloned().unwrap_or_else(Rational::zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    u: RatFunc<Rational>,
}

impl RationalMap {
    pub fn new(u: RatFunc<Rational>) -> Result<Self, GeometryError> {
        if u.is_constant() {
            return Err(GeometryError::ConstantMap);
        }
        Ok(RationalMap { u })
    }

    pub fn func(&self) -> &RatFunc<Rational> {
        &self.u
    }

    pub fn degree(&self) -> usize {
        self.u.map_degree()
    }

    fn num(&self) -> &Poly<Q> {
        self.u.numer()
    }

    fn den(&self) -> &Poly<Q> {
        self.u.denom()
    }

    /// `u(∞)` when finite.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        let (n, d) = (self.num().deg()?, self.den().deg()?);
        match n.cmp(&d) {
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Less => Some(Rational::zero()),
            std::cmp::Ordering::Equal => Some(self.num().lc()?.div(self.den().lc()?).ok()?),
        }
    }

    /// Squarefree polynomial in λ whose roots contain every finite branch
    /// value.
    pub fn branch_polynomial(&self) -> Result<Poly<Rational>, GeometryError> {
        let len = self.num().coeffs().len().max(self.den().coeffs().len());
        let h: Poly<RatFunc<Q>> = Poly::from_coeffs(
            (0..len)
                .map(|i| {
                    let a = coeff(self.num(), i);
                    let b = coeff(self.den(), i);
                    RatFunc::from_poly_q(Poly::from_coeffs(vec![a, b.neg()]))
                })
                .collect(),
        );
        let disc = discriminant(&h)?;
        let mut s = disc.numer().clone();
        if let Some(l0) = self.value_at_infinity() {
            s = &s * &Poly::linear_monic(l0.neg());
        }
        if s.deg().unwrap_or(0) == 0 {
            return Ok(Poly::constant(Rational::one()));
        }
        Ok(squarefree_decompose(&s)?.squarefree_part())
    }

    /// Number of fiber points over a root β of the context modulus.
    fn fiber_size_alg(&self, beta: &AlgElement, ctx: &Arc<AlgContext>) -> Result<usize, PolyError> {
        let len = self.num().coeffs().len().max(self.den().coeffs().len());
        let h: Poly<AlgElement> = Poly::from_coeffs(
            (0..len)
                .map(|i| ctx.constant(coeff(self.num(), i)).sub(&beta.mul(&ctx.constant(coeff(self.den(), i)))))
                .collect(),
        );
        // force a uniform degree across the roots of the modulus
        h.lc().ok_or(PolyError::ZeroPolynomial)?.inv()?;
        let finite = distinct_root_count(&h)?;
        Ok(finite + usize::from(h.deg().unwrap_or(0) < self.degree()))
    }

    fn fiber_size_infinity(&self) -> Result<usize, PolyError> {
        let finite = if self.den().deg() == Some(0) {
            0
        } else {
            distinct_root_count(self.den())?
        };
        Ok(finite + usize::from(self.den().deg().unwrap_or(0) < self.degree()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchEntry {
    /// Minimal data locating the branch values: a squarefree polynomial in
    /// λ, or "inf".
    pub values: String,
    pub count: usize,
    /// `deg u - |fiber|` at each of those values.
    pub defect: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ramification {
    pub degree: usize,
    pub total: usize,
    pub branches: Vec<BranchEntry>,
}

/// Σ over λ in P^1 of `deg u - |u^{-1}(λ)|`.
pub fn ramification(u: &RationalMap) -> Result<Ramification, GeometryError> {
    let d = u.degree();
    let mut branches = Vec::new();
    let inf = d - u.fiber_size_infinity()?;
    if inf > 0 {
        branches.push(BranchEntry {
            values: "inf".into(),
            count: 1,
            defect: inf,
        });
    }
    let s = u.branch_polynomial()?;
    if s.deg().unwrap_or(0) > 0 {
        let pieces = split_over_roots(&s, |ctx| u.fiber_size_alg(&ctx.root(), ctx))?;
        let mut found: Vec<BranchEntry> = pieces
            .into_iter()
            .filter(|(_, size)| *size < d)
            .map(|(m, size)| BranchEntry {
                values: m.fmt_var("λ"),
                count: m.deg().unwrap_or(0),
                defect: d - size,
            })
            .collect();
        found.sort_by(|a, b| a.values.cmp(&b.values));
        branches.extend(found);
    }
    Ok(Ramification {
        degree: d,
        total: branches.iter().map(|b| b.count * b.defect).sum(),
        branches,
    })
}

pub fn ramification_total(u: &RationalMap) -> Result<usize, GeometryError> {
    Ok(ramification(u)?.total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub u: RationalMap,
    pub v: RationalMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeuthenResult {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

/// `2ε - ram(u)` against `2δ - ram(v)`; both are χ(P^1) = 2.
pub fn zeuthen_check(c: &Correspondence) -> Result<ZeuthenResult, GeometryError> {
    let lhs = 2 * c.u.degree() as i64 - ramification_total(&c.u)? as i64;
    let rhs = 2 * c.v.degree() as i64 - ramification_total(&c.v)? as i64;
    Ok(ZeuthenResult {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrationalClass {
    /// The points are `[λ:1]` for λ ranging over the roots of this
    /// polynomial.
    pub modulus: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCensus {
    pub rational: Vec<ProjPoint<Rational>>,
    pub irrational: Vec<IrrationalClass>,
}

impl LinearCensus {
    pub fn size(&self) -> usize {
        self.rational.len() + self.irrational.iter().map(|c| c.count).sum::<usize>()
    }
}

/// True when `f` has a zero and every zero has multiplicity at least 2.
fn totally_multiple<F: Field>(f: &RatFunc<F>) -> Result<bool, PolyError> {
    let p = zero_profile(f).map_err(unwrap_ff)?;
    Ok(p.has_zeros() && p.is_k_powerful(2))
}

/// All `b` in P^1(Q̄) such that `L(b) = s_0 + c t_0` has only multiple
/// zeros. `[1:0]` gives the constant 1 and never qualifies.
pub fn lemma_linear_census(c: &RatFunc<Rational>) -> Result<LinearCensus, GeometryError> {
    if c.is_constant() {
        return Err(GeometryError::ConstantInput);
    }
    let map = RationalMap::new(c.clone())?;
    let s = map.branch_polynomial()?;
    let split = split_rational_roots(&s)?;
    let mut rational = Vec::new();
    for beta in split.roots {
        let lambda = beta.neg();
        let l = RatFunc::constant(lambda.clone()).add(c);
        if totally_multiple(&l)? {
            rational.push(ProjPoint::Affine(lambda));
        }
    }
    let mut irrational = Vec::new();
    if split.residual.deg().unwrap_or(0) > 0 {
        // λ = -β over each root β of the residual
        let pieces = split_over_roots(&split.residual, |ctx| {
            let lift = |p: &Poly<Q>| p.map(|q| ctx.constant(q.clone()));
            let (n, d) = (lift(c.numer()), lift(c.denom()));
            let num = &n - &d.scale(&ctx.root());
            let l = RatFunc::new(num, d)?;
            totally_multiple(&l)
        })?;
        for (m, hit) in pieces {
            if hit {
                // roots of m(-λ)
                let flipped = Poly::from_coeffs(
                    m.coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, a)| if i % 2 == 1 { a.neg() } else { a.clone() })
                        .collect(),
                )
                .monic()?;
                irrational.push(IrrationalClass {
                    modulus: flipped.fmt_var("λ"),
                    count: m.deg().unwrap_or(0),
                });
            }
        }
        irrational.sort_by(|a, b| a.modulus.cmp(&b.modulus));
    }
    let census = LinearCensus { rational, irrational };
    if census.size() > 4 {
        return Err(GeometryError::BoundExceeded(census.size()));
    }
    Ok(census)
}
