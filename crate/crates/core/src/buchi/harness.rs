//! Randomized consistency check of the main theorem over Q(x).
//!
//! Three families are generated from a seeded RNG: constructed powers
//! `(t+ν)^n`, constant-coefficient forms, and forms in the `Other` class.
//! Any outcome contradicting the theorem is returned as
//! `BuchiError::TheoremViolation` carrying a JSON witness.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{census, exact_powerful_locus, BuchiError};
use crate::bounds::bound_m;
use crate::fields::{Field, Rational};
use crate::funcfield::{classify, BuchiForm, Classification, ProjPoint, RatFunc};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub n: usize,
    /// Forms generated per family.
    pub trials: usize,
    pub seed: u64,
    /// Integer coefficients are drawn from `-pool..=pool`.
    pub pool: i64,
    /// Affine sample points Λ.
    pub lambdas: Vec<Rational>,
}

impl HarnessConfig {
    pub fn new(n: usize, trials: usize, seed: u64) -> Self {
        HarnessConfig {
            n,
            trials,
            seed,
            pool: 3,
            lambdas: (-50..50).map(Rational::from_i64).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HarnessReport {
    pub n: usize,
    pub seed: u64,
    pub bound: u64,
    pub power_forms: usize,
    pub power_points_checked: usize,
    pub power_points_powerful: usize,
    pub constant_forms: usize,
    pub other_forms: usize,
    /// Draws rejected because they were not in the `Other` class.
    pub other_resamples: usize,
    pub max_locus_size: usize,
    pub max_rational_points: usize,
    pub total_rational_points: usize,
    pub sampled_hits: usize,
    /// `F([1:0]) = 1` has no zeros, so adding [1:0] to Λ adds one powerful
    /// point to every census.
    pub infinity_always_powerful: bool,
}

fn random_poly(rng: &mut ChaCha8Rng, pool: i64, max_deg: usize) -> Poly<Rational> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs(
        (0..=deg)
            .map(|_| Rational::from_i64(rng.gen_range(-pool..=pool)))
            .collect(),
    )
}

fn random_ratfunc(rng: &mut ChaCha8Rng, pool: i64) -> RatFunc<Rational> {
    let num = random_poly(rng, pool, 2);
    if rng.gen_bool(0.25) {
        let den = Poly::linear_monic(Rational::from_i64(rng.gen_range(-pool..=pool)));
        RatFunc::new(num, den).expect("nonzero denominator")
    } else {
        RatFunc::from_poly_q(num)
    }
}

fn random_nonconstant(rng: &mut ChaCha8Rng, pool: i64) -> RatFunc<Rational> {
    loop {
        let f = random_ratfunc(rng, pool);
        if !f.is_constant() {
            return f;
        }
    }
}

fn linear(nu: &RatFunc<Rational>) -> Poly<RatFunc<Rational>> {
    Poly::linear_monic(nu.clone())
}

pub fn power_form(nu: &RatFunc<Rational>, n: usize) -> BuchiForm<Rational> {
    BuchiForm::from_poly(&linear(nu).pow(n as u64)).expect("monic of degree n")
}

fn constant_form(rng: &mut ChaCha8Rng, n: usize, pool: i64) -> BuchiForm<Rational> {
    let coeffs = (0..n)
        .map(|_| RatFunc::from_rational(Rational::from_i64(rng.gen_range(-pool..=pool))))
        .collect();
    BuchiForm::new(coeffs).expect("n >= 2")
}

fn other_candidate(rng: &mut ChaCha8Rng, n: usize, pool: i64) -> BuchiForm<Rational> {
    match rng.gen_range(0..3) {
        0 => BuchiForm::new((0..n).map(|_| random_ratfunc(rng, pool)).collect()).expect("n >= 2"),
        1 => {
            let nu = random_nonconstant(rng, pool);
            let mu = random_ratfunc(rng, pool);
            let p = &linear(&nu).pow(n as u64 - 1) * &linear(&mu);
            BuchiForm::from_poly(&p).expect("monic of degree n")
        }
        _ => {
            let nu = random_nonconstant(rng, pool);
            let c = RatFunc::from_rational(Rational::from_i64(rng.gen_range(1..=pool)));
            let p = &linear(&nu).pow(n as u64) + &Poly::constant(c);
            BuchiForm::from_poly(&p).expect("monic of degree n")
        }
    }
}

fn violation(family: &str, form: &BuchiForm<Rational>, reason: String) -> BuchiError {
    BuchiError::TheoremViolation(
        json!({ "family": family, "form": form.to_string(), "reason": reason }).to_string(),
    )
}

enum Outcome {
    Power { checked: usize, powerful: usize },
    Constant,
    Other { locus_size: usize, rational: usize, hits: usize },
}

fn check_form(
    family: &'static str,
    form: &BuchiForm<Rational>,
    cfg: &HarnessConfig,
    bound: usize,
) -> Result<Outcome, BuchiError> {
    let k = cfg.n as u32;
    let points: Vec<ProjPoint<Rational>> = cfg.lambdas.iter().cloned().map(ProjPoint::Affine).collect();
    match family {
        "power" => {
            let report = census(form, &points, k, 0)?;
            let powerful = report.powerful().len();
            if powerful != points.len() {
                return Err(violation(
                    family,
                    form,
                    format!("{powerful} of {} values are {k}-powerful", points.len()),
                ));
            }
            Ok(Outcome::Power {
                checked: points.len(),
                powerful,
            })
        }
        "constant" => match classify(form)? {
            Classification::ConstantCoefficients => Ok(Outcome::Constant),
            c => Err(violation(family, form, format!("classified as {}", c.label()))),
        },
        _ => {
            let locus = match exact_powerful_locus(form, k) {
                Ok(l) => l,
                Err(BuchiError::InfiniteLocus(m)) => return Err(violation(family, form, m)),
                Err(e) => return Err(e),
            };
            let size = locus.size_bound();
            if size >= bound {
                return Err(violation(family, form, format!("locus size {size} >= {bound}")));
            }
            let report = census(form, &points, k, 0)?;
            let exact = locus.points();
            let hits = report.powerful();
            for p in &hits {
                let l = p.affine().expect("affine sample");
                if !exact.contains(l) {
                    return Err(violation(
                        family,
                        form,
                        format!("sampled λ = {l} is {k}-powerful but missing from the exact locus"),
                    ));
                }
            }
            Ok(Outcome::Other {
                locus_size: size,
                rational: exact.len(),
                hits: hits.len(),
            })
        }
    }
}

pub fn theorem_harness(cfg: &HarnessConfig) -> Result<HarnessReport, BuchiError> {
    let n = cfg.n;
    let bound_big = bound_m(n as u64, 0)?;
    let bound: u64 = bound_big.try_into().unwrap_or(u64::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = HarnessReport {
        n,
        seed: cfg.seed,
        bound,
        ..Default::default()
    };

    let mut forms: Vec<(&'static str, BuchiForm<Rational>)> = Vec::new();
    for _ in 0..cfg.trials {
        forms.push(("power", power_form(&random_nonconstant(&mut rng, cfg.pool), n)));
        forms.push(("constant", constant_form(&mut rng, n, cfg.pool)));
        loop {
            let f = other_candidate(&mut rng, n, cfg.pool);
            if matches!(classify(&f)?, Classification::Other) {
                forms.push(("other", f));
                break;
            }
            report.other_resamples += 1;
        }
    }

    let outcomes: Vec<Result<Outcome, BuchiError>> = forms
        .par_iter()
        .map(|(family, f)| check_form(family, f, cfg, bound as usize))
        .collect();
    for o in outcomes {
        match o? {
            Outcome::Power { checked, powerful } => {
                report.power_forms += 1;
                report.power_points_checked += checked;
                report.power_points_powerful += powerful;
            }
            Outcome::Constant => report.constant_forms += 1,
            Outcome::Other {
                locus_size,
                rational,
                hits,
            } => {
                report.other_forms += 1;
                report.max_locus_size = report.max_locus_size.max(locus_size);
                report.max_rational_points = report.max_rational_points.max(rational);
                report.total_rational_points += rational;
                report.sampled_hits += hits;
            }
        }
    }

    report.infinity_always_powerful = forms.iter().all(|(_, f)| {
        let v = f.evaluate(&ProjPoint::Infinity);
        v == v.one_like()
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_form_expr;

    #[test]
    fn small_runs() {
        for n in 2..=3 {
            let r = theorem_harness(&HarnessConfig {
                lambdas: (-10..10).map(Rational::from_i64).collect(),
                ..HarnessConfig::new(n, 6, 7)
            })
            .unwrap();
            assert_eq!(r.power_forms, 6);
            assert_eq!(r.other_forms, 6);
            assert_eq!(r.power_points_powerful, r.power_points_checked);
            assert!(r.infinity_always_powerful);
            assert!((r.max_locus_size as u64) < r.bound);
        }
    }

    #[test]
    fn deterministic() {
        let cfg = HarnessConfig {
            lambdas: (-5..5).map(Rational::from_i64).collect(),
            ..HarnessConfig::new(2, 4, 11)
        };
        let a = serde_json::to_string(&theorem_harness(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&theorem_harness(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn family_examples() {
        let cfg = HarnessConfig::new(3, 0, 0);
        let f = parse_form_expr("(t+x^2)^3").unwrap();
        assert!(matches!(check_form("power", &f, &cfg, 4032), Ok(Outcome::Power { .. })));
        let cfg2 = HarnessConfig::new(2, 0, 0);
        let g = parse_form_expr("t^2-x^2").unwrap();
        match check_form("other", &g, &cfg2, 240).unwrap() {
            Outcome::Other { locus_size, .. } => assert_eq!(locus_size, 1),
            _ => panic!(),
        }
        let c = parse_form_expr("t^2+1").unwrap();
        assert!(matches!(check_form("constant", &c, &cfg2, 240), Ok(Outcome::Constant)));
    }
}
