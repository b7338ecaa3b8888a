//! The characteristic-p witness `F(t) = (t + (x^q+x)/2)^2 - ((x^q-x)/2)^2`
//! over F_p(x), which equals `(t + x^q)(t + x)` and takes only square values
//! on F_q.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fields::{is_prime, make_fq, Field, FieldError, FqContext, FqElement, Fp, PrimeField};
use crate::funcfield::{classify, zero_profile, BuchiForm, FuncFieldError, ProjPoint, RatFunc};
use crate::poly::{discriminant, Poly, PolyError, ProfileEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharPError {
    #[error("characteristic 2 is excluded")]
    EvenCharacteristic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
}

#[derive(Clone, Debug)]
pub struct CharPWitness {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// `A = (x^q + x)/2`.
    pub a: RatFunc<Fp>,
    /// `B = (x^q - x)/2`.
    pub b: RatFunc<Fp>,
    /// `F = (t + A)^2 - B^2`.
    pub form: BuchiForm<Fp>,
}

impl CharPWitness {
    /// `(t + x^q, t + x)`.
    pub fn factors(&self) -> (Poly<RatFunc<Fp>>, Poly<RatFunc<Fp>>) {
        let x = RatFunc::x(&self.field().one());
        (
            Poly::linear_monic(x.pow(self.q)),
            Poly::linear_monic(x),
        )
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("checked at construction")
    }
}

pub fn build_witness(p: u64, e: u32) -> Result<CharPWitness, CharPError> {
    if p == 2 {
        return Err(CharPError::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(CharPError::NotPrime(p));
    }
    if e == 0 {
        return Err(CharPError::ZeroDegree);
    }
    let fp = PrimeField::new(p)?;
    let q = p.pow(e);
    let half = RatFunc::constant(fp.element(2).inv()?);
    let x = RatFunc::x(&fp.one());
    let xq = x.pow(q);
    let a = xq.add(&x).mul(&half);
    let b = xq.sub(&x).mul(&half);
    let form = BuchiForm::new(vec![a.mul(&a).sub(&b.mul(&b)), a.add(&a)])?;
    let w = CharPWitness { p, e, q, a, b, form };

    let (f1, f2) = w.factors();
    if w.form.as_poly() != &f1 * &f2 {
        return Err(CharPError::VerificationFailed(
            "(t+A)^2 - B^2 differs from (t+x^q)(t+x)".into(),
        ));
    }
    // (t+A)^2 - B^2 = (t+A+B)(t+A-B) with A+B = x^q, A-B = x
    if w.a.add(&w.b) != xq || w.a.sub(&w.b) != x {
        return Err(CharPError::VerificationFailed("A ± B are not x^q, x".into()));
    }
    Ok(w)
}

fn lift(f: &RatFunc<Fp>, ctx: &Arc<FqContext>) -> Result<RatFunc<FqElement>, CharPError> {
    let up = |p: &Poly<Fp>| p.map(|c| ctx.from_base(*c));
    Ok(RatFunc::new(up(f.numer()), up(f.denom()))?)
}

fn lift_form(w: &CharPWitness, ctx: &Arc<FqContext>) -> Result<BuchiForm<FqElement>, CharPError> {
    let coeffs = w
        .form
        .coeffs()
        .iter()
        .map(|c| lift(c, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BuchiForm::new(coeffs)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub lambda: String,
    /// `F(λ) = (x + λ)^(q+1)`.
    pub power_identity: bool,
    /// Every zero of F(λ) has even multiplicity.
    pub even_profile: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquaresReport {
    pub q: u64,
    pub exponent: u64,
    pub checks: Vec<SquareCheck>,
}

/// Checks `F(λ) = (λ + x)^(q+1)` for every λ in F_q. Since q+1 is even each
/// value is the square of `(λ + x)^((q+1)/2)`.
pub fn verify_all_squares(w: &CharPWitness) -> Result<SquaresReport, CharPError> {
    let ctx = make_fq(w.p, w.e)?;
    let form = lift_form(w, &ctx)?;
    let one = ctx.from_i64(1);
    let x = RatFunc::x(&one);
    let mut checks = Vec::new();
    for l in ctx.elements() {
        let v = form.evaluate(&ProjPoint::Affine(l.clone()));
        let half = x.add(&RatFunc::constant(l.clone())).pow(w.q.div_ceil(2));
        let power_identity = v == half.mul(&half);
        let profile = zero_profile(&v)?;
        let even_profile = profile.multiplicities().all(|m| m % 2 == 0);
        if !power_identity || !even_profile {
            return Err(CharPError::VerificationFailed(format!("F({l}) = {v}")));
        }
        checks.push(SquareCheck {
            lambda: l.to_string(),
            power_identity,
            even_profile,
        });
    }
    Ok(SquaresReport {
        q: w.q,
        exponent: w.q + 1,
        checks,
    })
}

/// Discriminant in t is nonzero and some coefficient is non-constant.
pub fn verify_nondegenerate<F: Field>(form: &BuchiForm<F>) -> Result<bool, CharPError> {
    let disc = discriminant(&form.as_poly())?;
    Ok(!disc.is_zero() && !form.has_constant_coefficients())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideProbe {
    pub lambda: String,
    pub profile: Vec<ProfileEntry>,
    pub two_powerful: bool,
}

/// Evaluates F at up to `samples` elements of F_{p^{2e}} outside F_q. The
/// value `(x + λ)(x + λ^q)^q` has a simple zero there.
pub fn probe_outside(w: &CharPWitness, samples: usize) -> Result<Vec<OutsideProbe>, CharPError> {
    let ctx = make_fq(w.p, 2 * w.e)?;
    let form = lift_form(w, &ctx)?;
    let x = RatFunc::x(&ctx.from_i64(1));
    let mut out = Vec::new();
    for l in ctx.elements() {
        if out.len() >= samples {
            break;
        }
        let lq = l.pow(w.q);
        if lq == l {
            continue;
        }
        let v = form.evaluate(&ProjPoint::Affine(l.clone()));
        let lin = |c: &FqElement| x.add(&RatFunc::constant(c.clone()));
        if v != lin(&l).mul(&lin(&lq).pow(w.q)) {
            return Err(CharPError::VerificationFailed(format!("F({l}) = {v}")));
        }
        let profile = zero_profile(&v)?;
        out.push(OutsideProbe {
            lambda: l.to_string(),
            profile: profile
                .finite
                .parts
                .iter()
                .map(|(p, m)| ProfileEntry(p.fmt_var("x"), *m))
                .collect(),
            two_powerful: profile.is_k_powerful(2),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharPReport {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub form: String,
    pub factored: String,
    pub discriminant: String,
    pub classification: &'static str,
    pub nondegenerate: bool,
    pub squares: SquaresReport,
    pub outside: Vec<OutsideProbe>,
}

impl CharPReport {
    pub fn passed(&self) -> bool {
        self.nondegenerate
            && self.squares.checks.len() as u64 == self.q
            && self.outside.iter().all(|o| !o.two_powerful)
    }
}

pub fn full_report(p: u64, e: u32, samples: usize) -> Result<CharPReport, CharPError> {
    let w = build_witness(p, e)?;
    let disc = discriminant(&w.form.as_poly())?;
    Ok(CharPReport {
        p,
        e,
        q: w.q,
        form: w.form.to_string(),
        factored: format!("(t+x^{})*(t+x)", w.q),
        discriminant: disc.to_string(),
        classification: classify(&w.form)?.label(),
        nondegenerate: verify_nondegenerate(&w.form)?,
        squares: verify_all_squares(&w)?,
        outside: probe_outside(&w, samples)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_poly(p: u64, coeffs: &[i64]) -> RatFunc<Fp> {
        let f = PrimeField::new(p).unwrap();
        RatFunc::from_poly(Poly::from_coeffs(coeffs.iter().map(|&c| f.element(c)).collect()), &f.one())
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_witness(2, 1).unwrap_err(), CharPError::EvenCharacteristic);
        assert_eq!(build_witness(9, 1).unwrap_err(), CharPError::NotPrime(9));
        assert_eq!(build_witness(3, 0).unwrap_err(), CharPError::ZeroDegree);
    }

    #[test]
    fn p3_coefficients() {
        // 2^{-1} = 2 in F_3: A = 2x^3 + 2x, B = 2x^3 - 2x = 2x^3 + x
        let w = build_witness(3, 1).unwrap();
        assert_eq!(w.a, fp_poly(3, &[0, 2, 0, 2]));
        assert_eq!(w.b, fp_poly(3, &[0, 1, 0, 2]));
        // a_0 = x^4, a_1 = x^3 + x
        assert_eq!(w.form.coeffs()[0], fp_poly(3, &[0, 0, 0, 0, 1]));
        assert_eq!(w.form.coeffs()[1], fp_poly(3, &[0, 1, 0, 1]));
    }

    #[test]
    fn squares_over_fq() {
        for (p, e) in [(3, 1), (5, 1), (3, 2)] {
            let w = build_witness(p, e).unwrap();
            let r = verify_all_squares(&w).unwrap();
            assert_eq!(r.checks.len() as u64, w.q);
        }
        // p = q = 3, λ = 0: F(0) = x^4
        let w = build_witness(3, 1).unwrap();
        assert_eq!(w.form.evaluate(&ProjPoint::Affine(w.field().zero())), fp_poly(3, &[0, 0, 0, 0, 1]));
        // λ = 1: (1 + x)^4
        let one = w.field().one();
        assert_eq!(w.form.evaluate(&ProjPoint::Affine(one)), fp_poly(3, &[1, 1]).pow(4));
    }

    #[test]
    fn nondegenerate() {
        for p in [3, 5] {
            let w = build_witness(p, 1).unwrap();
            assert!(verify_nondegenerate(&w.form).unwrap());
            // disc = 4B^2
            let disc = discriminant(&w.form.as_poly()).unwrap();
            let four = RatFunc::constant(w.field().element(4));
            assert_eq!(disc, four.mul(&w.b).mul(&w.b));
        }
        let f = PrimeField::new(3).unwrap();
        let x = RatFunc::x(&f.one());
        let sq = BuchiForm::from_poly(&Poly::linear_monic(x).pow(2)).unwrap();
        assert!(!verify_nondegenerate(&sq).unwrap());
    }

    #[test]
    fn outside_fq_not_square() {
        let w = build_witness(3, 1).unwrap();
        let probes = probe_outside(&w, 4).unwrap();
        assert_eq!(probes.len(), 4);
        for pr in probes {
            assert!(!pr.two_powerful);
            let mut ms: Vec<u32> = pr.profile.iter().map(|e| e.1).collect();
            ms.sort();
            assert_eq!(ms, vec![1, 3]);
        }
    }
}
