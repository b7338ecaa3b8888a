//! Exact affine powerful locus of a form.
//!
//! With `D(x)` the common denominator of the coefficients, `G(λ, x) =
//! D(x) F(λ)` is a polynomial in both variables. Over Q(λ) write
//! `G = c(λ) u ∏ P_i^{e_i}` with `c` the λ-content and `P_i` primitive and
//! squarefree in x. If some `e_j < k`, every λ outside the roots of
//!
//! `R(λ) = c · ∏ lc_x(P_i) · Res_x(P_j, ∂_x P_j · ∏_{i≠j} P_i · D)`
//!
//! leaves a zero of multiplicity exactly `e_j` in F(λ), so only roots of R
//! can be k-powerful. If every `e_i >= k`, only the order at infinity can
//! fail, and it changes only at roots of `c · ∏ lc_x(P_i)`.

use serde::Serialize;

use super::BuchiError;
use crate::fields::{Field, Rational};
use crate::funcfield::{classify, zero_profile, BuchiForm, PowerLevel, ProjPoint, RatFunc};
use crate::poly::{resultant, split_rational_roots, squarefree_decompose, Poly};

type Q = Rational;
type L = RatFunc<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub k: u32,
    /// Rational λ with F(λ) k-powerful, ascending, with their exact level.
    pub rational_points: Vec<(Rational, PowerLevel)>,
    /// Rational candidates where F(λ) = 0.
    pub degenerate: Vec<Rational>,
    /// Degrees of the candidate factors without rational roots; their sum
    /// bounds the number of irrational points of the locus.
    pub residual_degrees: Vec<usize>,
    /// R(λ), the candidate polynomial.
    pub candidate_poly: Poly<Rational>,
    /// Multiplicities of the generic value F(λ) at its finite zeros.
    pub generic_multiplicities: Vec<u32>,
    pub generic_order_at_infinity: u32,
}

impl Locus {
    pub fn points(&self) -> Vec<Rational> {
        self.rational_points.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn residual_bound(&self) -> usize {
        self.residual_degrees.iter().sum()
    }

    /// Rational points plus the bound on irrational ones.
    pub fn size_bound(&self) -> usize {
        self.rational_points.len() + self.residual_bound()
    }
}

#[derive(Serialize)]
pub struct LocusJson {
    pub k: u32,
    pub rational_points: Vec<String>,
    pub levels: Vec<PowerLevel>,
    pub degenerate: Vec<String>,
    pub residual_degrees: Vec<usize>,
    pub size_bound: usize,
    pub candidate_poly: String,
    pub generic_multiplicities: Vec<u32>,
    pub generic_order_at_infinity: u32,
}

impl From<&Locus> for LocusJson {
    fn from(l: &Locus) -> Self {
        LocusJson {
            k: l.k,
            rational_points: l.rational_points.iter().map(|(p, _)| p.to_string()).collect(),
            levels: l.rational_points.iter().map(|(_, v)| *v).collect(),
            degenerate: l.degenerate.iter().map(ToString::to_string).collect(),
            residual_degrees: l.residual_degrees.clone(),
            size_bound: l.size_bound(),
            candidate_poly: l.candidate_poly.fmt_var("λ"),
            generic_multiplicities: l.generic_multiplicities.clone(),
            generic_order_at_infinity: l.generic_order_at_infinity,
        }
    }
}

fn lam(p: Poly<Q>) -> L {
    RatFunc::from_poly_q(p)
}

fn poly_lcm(a: &Poly<Q>, b: &Poly<Q>) -> Result<Poly<Q>, BuchiError> {
    let g = a.gcd(b)?;
    Ok((a * b).exact_div(&g)?.monic()?)
}

/// Scales a polynomial over Q(λ) into a primitive element of Q[λ][x].
fn primitive(p: &Poly<L>) -> Result<Poly<L>, BuchiError> {
    let one = Poly::constant(Q::one());
    let mut den = one.clone();
    for c in p.coeffs() {
        den = poly_lcm(&den, c.denom())?;
    }
    let scaled: Vec<Poly<Q>> = p
        .coeffs()
        .iter()
        .map(|c| Ok(&c.numer().clone() * &den.exact_div(c.denom())?))
        .collect::<Result<_, BuchiError>>()?;
    let content = scaled
        .iter()
        .try_fold(Poly::zero(), |acc: Poly<Q>, c| acc.gcd(c))?;
    Ok(Poly::from_coeffs(
        scaled
            .iter()
            .map(|c| Ok(lam(c.exact_div(&content)?)))
            .collect::<Result<_, BuchiError>>()?,
    ))
}

fn lc_lambda(p: &Poly<L>) -> Poly<Q> {
    p.lc().expect("nonzero").numer().clone()
}

/// Full rational k-powerful locus of a form in the `Other` class.
pub fn exact_powerful_locus(form: &BuchiForm<Rational>, k: u32) -> Result<Locus, BuchiError> {
    let class = classify(form)?;
    if class.is_exceptional() {
        return Err(BuchiError::PreconditionViolated(format!(
            "{form} is {}; its locus is not finite",
            class.label()
        )));
    }
    let n = form.n();
    let one = Poly::constant(Q::one());
    let mut d = one.clone();
    for a in form.coeffs() {
        d = poly_lcm(&d, a.denom())?;
    }
    // coefficient of x^j in G is Σ_i (a_i D)[j] λ^i + D[j] λ^n
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut put = |i: usize, p: &Poly<Q>| {
        for (j, c) in p.coeffs().iter().enumerate() {
            if rows.len() <= j {
                rows.resize(j + 1, vec![Q::zero(); n + 1]);
            }
            rows[j][i] = c.clone();
        }
    };
    for (i, a) in form.coeffs().iter().enumerate() {
        put(i, &(a.numer() * &d.exact_div(a.denom())?));
    }
    put(n, &d);
    let g: Poly<L> = Poly::from_coeffs(rows.into_iter().map(|r| lam(Poly::from_coeffs(r))).collect());

    let content = g
        .coeffs()
        .iter()
        .try_fold(Poly::zero(), |acc: Poly<Q>, c| acc.gcd(c.numer()))?;
    let g_tilde: Poly<L> = Poly::from_coeffs(
        g.coeffs()
            .iter()
            .map(|c| Ok(lam(c.numer().exact_div(&content)?)))
            .collect::<Result<_, BuchiError>>()?,
    );
    let sqf = squarefree_decompose(&g_tilde)?;
    let parts: Vec<(Poly<L>, u32)> = sqf
        .parts
        .iter()
        .map(|(p, e)| Ok((primitive(p)?, *e)))
        .collect::<Result<_, BuchiError>>()?;

    let deg_g = g.deg().expect("monic in λ, so nonzero");
    let inf_order = d.deg().unwrap_or(0).saturating_sub(deg_g) as u32;
    let generic_multiplicities: Vec<u32> = parts.iter().map(|(_, e)| *e).collect();

    let mut r = content.clone();
    for (p, _) in &parts {
        r = &r * &lc_lambda(p);
    }
    let weakest = parts
        .iter()
        .enumerate()
        .filter(|(_, (_, e))| *e < k)
        .min_by_key(|(_, (_, e))| *e)
        .map(|(j, _)| j);
    match weakest {
        Some(j) => {
            let pj = &parts[j].0;
            let mut other = pj.derivative();
            for (i, (p, _)) in parts.iter().enumerate() {
                if i != j {
                    other = &other * p;
                }
            }
            other = &other * &d.map(|c| RatFunc::constant(c.clone()));
            let res = resultant(pj, &other)?;
            debug_assert!(res.is_polynomial());
            r = &r * res.numer();
        }
        None => {
            if inf_order == 0 || inf_order >= k {
                return Err(BuchiError::InfiniteLocus(format!(
                    "generic value of {form} is {k}-powerful"
                )));
            }
        }
    }
    if r.is_zero() {
        return Err(BuchiError::VanishingCandidatePolynomial(form.to_string()));
    }

    let split = split_rational_roots(&r)?;
    let mut rational_points = Vec::new();
    let mut degenerate = Vec::new();
    for l in split.roots {
        let v = form.evaluate(&ProjPoint::Affine(l.clone()));
        if v.is_zero() {
            degenerate.push(l);
            continue;
        }
        let level = zero_profile(&v)?.level();
        if level.at_least(k) {
            rational_points.push((l, level));
        }
    }
    let residual_degrees = match split.residual.deg() {
        Some(0) | None => Vec::new(),
        Some(_) => squarefree_decompose(&split.residual)?
            .parts
            .iter()
            .map(|(p, _)| p.deg().unwrap_or(0))
            .collect(),
    };
    Ok(Locus {
        k,
        rational_points,
        degenerate,
        residual_degrees,
        candidate_poly: r,
        generic_multiplicities,
        generic_order_at_infinity: inf_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::is_k_powerful;
    use crate::parser::parse_form_expr;

    fn sampled(form: &BuchiForm<Rational>, k: u32, range: std::ops::RangeInclusive<i64>) -> Vec<Rational> {
        range
            .map(Rational::from_i64)
            .filter(|l| {
                let v = form.evaluate(&ProjPoint::Affine(l.clone()));
                !v.is_zero() && is_k_powerful(&v, k).unwrap()
            })
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let f = parse_form_expr("t^2-x^2").unwrap();
        let l = exact_powerful_locus(&f, 2).unwrap();
        assert_eq!(l.points(), vec![Rational::zero()]);
        assert_eq!(l.residual_bound(), 0);
        assert_eq!(sampled(&f, 2, -50..=50), l.points());
    }

    #[test]
    fn simple_zero_everywhere() {
        let f = parse_form_expr("t^2+x").unwrap();
        let l = exact_powerful_locus(&f, 2).unwrap();
        assert!(l.points().is_empty());
        assert_eq!(l.candidate_poly.deg(), Some(0));
    }

    #[test]
    fn degenerate_flagged() {
        let f = parse_form_expr("t^3+x*t").unwrap();
        let l = exact_powerful_locus(&f, 3).unwrap();
        assert!(l.points().is_empty());
        assert_eq!(l.degenerate, vec![Rational::zero()]);
    }

    #[test]
    fn repeated_generic_factor() {
        // (t+x)^2 (t+1) is 2-powerful at every λ != -1, so k = 2 < n is infinite
        let f = parse_form_expr("(t+x)^2*(t+1)").unwrap();
        assert!(matches!(exact_powerful_locus(&f, 2), Err(BuchiError::InfiniteLocus(_))));
        let l3 = exact_powerful_locus(&f, 3).unwrap();
        assert_eq!(l3.generic_multiplicities, vec![2]);
        assert_eq!(sampled(&f, 3, -30..=30), l3.points());
        assert_eq!(l3.degenerate, vec![Rational::from_i64(-1)]);
    }

    #[test]
    fn rational_coefficients_and_infinity() {
        let f = parse_form_expr("t^2 + (1/x)*t + 1/x^2").unwrap();
        let l = exact_powerful_locus(&f, 2).unwrap();
        assert_eq!(sampled(&f, 2, -30..=30), l.points());
    }

    #[test]
    fn exceptional_forms_rejected() {
        let f = parse_form_expr("(t+x)^2").unwrap();
        assert!(matches!(exact_powerful_locus(&f, 2), Err(BuchiError::PreconditionViolated(_))));
        let c = parse_form_expr("t^2+1").unwrap();
        assert!(matches!(exact_powerful_locus(&c, 2), Err(BuchiError::PreconditionViolated(_))));
    }
}
