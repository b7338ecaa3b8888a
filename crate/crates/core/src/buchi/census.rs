use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::BuchiError;
use crate::bounds::bound_m;
use crate::fields::Field;
use crate::funcfield::{classify, zero_profile, BuchiForm, PowerLevel, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "INCONSISTENT")]
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport<F> {
    pub form: String,
    pub classification: &'static str,
    pub tested: Vec<ProjPoint<F>>,
    /// Every non-degenerate point with the largest k for which F(point) is
    /// k-powerful, in input order.
    pub levels: Vec<(ProjPoint<F>, PowerLevel)>,
    /// Points where F vanishes identically.
    pub degenerate: Vec<ProjPoint<F>>,
    pub mu: u32,
    pub bound_m: BigInt,
    pub verdict: Verdict,
}

impl<F: Field> CensusReport<F> {
    /// Points whose value is mu-powerful.
    pub fn powerful(&self) -> Vec<&ProjPoint<F>> {
        self.powerful_at(self.mu)
    }

    pub fn powerful_at(&self, mu: u32) -> Vec<&ProjPoint<F>> {
        self.levels
            .iter()
            .filter(|(_, l)| l.at_least(mu))
            .map(|(p, _)| p)
            .collect()
    }
}

/// Evaluates `form` at every point and records powerfulness levels.
/// The verdict is consistent iff the form is in an exceptional class or
/// fewer than M(n, g) points are mu-powerful.
pub fn census<F: Field>(
    form: &BuchiForm<F>,
    points: &[ProjPoint<F>],
    mu: u32,
    g: u64,
) -> Result<CensusReport<F>, BuchiError> {
    let class = classify(form)?;
    let evaluated: Vec<Result<Option<PowerLevel>, BuchiError>> = points
        .par_iter()
        .map(|b| {
            let v = form.evaluate(b);
            if v.is_zero() {
                return Ok(None);
            }
            Ok(Some(zero_profile(&v)?.level()))
        })
        .collect();
    let mut levels = Vec::new();
    let mut degenerate = Vec::new();
    for (b, r) in points.iter().zip(evaluated) {
        match r? {
            Some(l) => levels.push((b.clone(), l)),
            None => degenerate.push(b.clone()),
        }
    }
    let bound = bound_m(form.n() as u64, g)?;
    let hits = levels.iter().filter(|(_, l)| l.at_least(mu)).count();
    let verdict = if class.is_exceptional() || BigInt::from(hits) < bound {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(CensusReport {
        form: form.to_string(),
        classification: class.label(),
        tested: points.to_vec(),
        levels,
        degenerate,
        mu,
        bound_m: bound,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rational;
    use crate::parser::parse_form_expr;
    use proptest::prelude::*;

    fn affine(range: std::ops::RangeInclusive<i64>) -> Vec<ProjPoint<Rational>> {
        range.map(|l| ProjPoint::Affine(Rational::from_i64(l))).collect()
    }

    #[test]
    fn square_of_linear() {
        let f = parse_form_expr("(t+x)^2").unwrap();
        let r = census(&f, &affine(0..=9), 2, 0).unwrap();
        assert_eq!(r.powerful().len(), 10);
        assert_eq!(r.classification, "PowerOfLinear");
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn no_powerful_values() {
        let f = parse_form_expr("t^2+x").unwrap();
        let r = census(&f, &affine(0..=99), 2, 0).unwrap();
        assert!(r.powerful().is_empty());
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn difference_of_squares() {
        let f = parse_form_expr("t^2-x^2").unwrap();
        let r = census(&f, &affine(-5..=5), 2, 0).unwrap();
        assert_eq!(r.powerful(), vec![&ProjPoint::Affine(Rational::zero())]);
        assert!(r.degenerate.is_empty());
        let with_inf = census(&f, &[ProjPoint::Infinity], 2, 0).unwrap();
        assert_eq!(with_inf.levels, vec![(ProjPoint::Infinity, PowerLevel::Unbounded)]);
    }

    #[test]
    fn degenerate_points_are_separate() {
        // t^3 + x t vanishes at t = 0
        let f = parse_form_expr("t^3+x*t").unwrap();
        let r = census(&f, &affine(-2..=2), 3, 0).unwrap();
        assert_eq!(r.degenerate, vec![ProjPoint::Affine(Rational::zero())]);
        assert!(r.powerful().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn threshold_monotone(a in -3i64..4, b in -3i64..4, c in -3i64..4, mu in 1u32..4) {
            let src = format!("t^2 + ({a}*x^2+{b}*x)*t + {c}*x^2");
            let f = parse_form_expr(&src).unwrap();
            let r = census(&f, &affine(-6..=6), mu, 0).unwrap();
            let hi = r.powerful_at(mu + 1);
            let lo = r.powerful_at(mu);
            prop_assert!(hi.iter().all(|p| lo.contains(p)));
        }
    }
}
