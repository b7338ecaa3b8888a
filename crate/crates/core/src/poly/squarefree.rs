use serde::Serialize;

use super::{Poly, PolyError};
use crate::fields::Field;

/// `f = unit * prod(factor^multiplicity)` with monic, squarefree, pairwise
/// coprime factors listed by strictly increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<F> {
    pub unit: F,
    pub parts: Vec<(Poly<F>, u32)>,
}

impl<F: Field> SquarefreeDecomposition<F> {
    pub fn reconstruct(&self) -> Poly<F> {
        self.parts
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(u64::from(*m)))
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.parts.iter().map(|(_, m)| *m).max()
    }

    pub fn min_multiplicity(&self) -> Option<u32> {
        self.parts.iter().map(|(_, m)| *m).min()
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.parts.iter().map(|(g, _)| g.deg().unwrap_or(0)).sum()
    }

    pub fn squarefree_part(&self) -> Poly<F> {
        self.parts
            .iter()
            .fold(Poly::constant(self.unit.one_like()), |acc, (g, _)| &acc * g)
    }

    /// `(factor text, multiplicity)` pairs printed in `var`.
    pub fn profile(&self, var: &str) -> Vec<ProfileEntry> {
        self.parts
            .iter()
            .map(|(g, m)| ProfileEntry(g.fmt_var(var), *m))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry(pub String, pub u32);

pub fn squarefree_decompose<F: Field>(f: &Poly<F>) -> Result<SquarefreeDecomposition<F>, PolyError> {
    decompose(f, false)
}

/// As [`squarefree_decompose`], but refuses inputs whose decomposition needs
/// a p-th root in characteristic p.
pub fn squarefree_decompose_strict<F: Field>(
    f: &Poly<F>,
) -> Result<SquarefreeDecomposition<F>, PolyError> {
    decompose(f, true)
}

fn decompose<F: Field>(f: &Poly<F>, strict: bool) -> Result<SquarefreeDecomposition<F>, PolyError> {
    let (unit, monic) = f.monic_parts()?;
    let mut parts = if unit.characteristic() == 0 {
        yun(&monic)?
    } else {
        char_p(&monic, strict)?
    };
    parts.sort_by_key(|(_, m)| *m);
    Ok(SquarefreeDecomposition { unit, parts })
}

fn yun<F: Field>(f: &Poly<F>) -> Result<Vec<(Poly<F>, u32)>, PolyError> {
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let g = f.gcd(&df)?;
    let mut c = f.exact_div(&g)?;
    let mut d = &df.exact_div(&g)? - &c.derivative();
    let mut i = 1u32;
    while c.deg().unwrap_or(0) > 0 {
        let a = c.gcd(&d)?;
        c = c.exact_div(&a)?;
        d = &d.exact_div(&a)? - &c.derivative();
        if a.deg().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

fn char_p<F: Field>(f: &Poly<F>, strict: bool) -> Result<Vec<(Poly<F>, u32)>, PolyError> {
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = f.lc().expect("nonzero").characteristic();
    let df = f.derivative();
    let root_of = |h: &Poly<F>| -> Result<Poly<F>, PolyError> {
        if strict {
            return Err(PolyError::CharPUnsupportedShape(p));
        }
        h.pth_root().ok_or(PolyError::CharPUnsupportedShape(p))
    };
    if df.is_zero() {
        let root = root_of(f)?;
        for (g, m) in char_p(&root, strict)? {
            out.push((g, m * p as u32));
        }
        return Ok(out);
    }
    let mut r = f.gcd(&df)?;
    let mut w = f.exact_div(&r)?;
    let mut i = 1u32;
    while w.deg().unwrap_or(0) > 0 {
        let y = w.gcd(&r)?;
        let fac = w.exact_div(&y)?;
        if fac.deg().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        i += 1;
        r = r.exact_div(&y)?;
        w = y;
    }
    if r.deg().unwrap_or(0) > 0 {
        let root = root_of(&r)?;
        for (g, m) in char_p(&root, strict)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// Number of distinct roots in the algebraic closure.
pub fn distinct_root_count<F: Field>(f: &Poly<F>) -> Result<usize, PolyError> {
    let f = f.monic()?;
    let d = f.deg().expect("nonzero");
    if f.lc().expect("nonzero").characteristic() == 0 {
        let g = f.gcd(&f.derivative())?;
        Ok(d - g.deg().expect("gcd with nonzero f"))
    } else {
        Ok(squarefree_decompose(&f)?.distinct_roots())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_fq, Rational};
    use crate::poly::tests::q;
    use proptest::prelude::*;

    #[test]
    fn constructed_profile() {
        // (x-1)(x-2)^2
        let f = &q(&[-1, 1]) * &q(&[-2, 1]).pow(2);
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.unit, Rational::one());
        assert_eq!(d.parts, vec![(q(&[-1, 1]), 1), (q(&[-2, 1]), 2)]);
    }

    #[test]
    fn pure_power() {
        let d = squarefree_decompose(&q(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(d.parts, vec![(q(&[0, 1]), 4)]);
    }

    #[test]
    fn unit_extracted() {
        let d = squarefree_decompose(&q(&[3, 0, 3])).unwrap();
        assert_eq!(d.unit, Rational::from_i64(3));
        assert_eq!(d.parts, vec![(q(&[1, 0, 1]), 1)]);
        let c = squarefree_decompose(&q(&[5])).unwrap();
        assert!(c.parts.is_empty());
        assert_eq!(squarefree_decompose(&q(&[])), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn root_counts() {
        assert_eq!(distinct_root_count(&(&q(&[-1, 1]).pow(2) * &q(&[-2, 1]))).unwrap(), 2);
        assert_eq!(distinct_root_count(&q(&[1, 0, 1])).unwrap(), 2);
        assert_eq!(distinct_root_count(&q(&[0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(distinct_root_count(&q(&[])), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn char_p_multiplicity_divisible_by_p() {
        // over F_9: (x+1)^4 * (x+y)^3 * (x+2)
        let f9 = make_fq(3, 2).unwrap();
        let lin = |c| Poly::linear_monic(c);
        let a = lin(f9.from_i64(1));
        let b = lin(f9.generator());
        let c = lin(f9.from_i64(2));
        let f = &(&a.pow(4) * &b.pow(3)) * &c;
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.parts, vec![(c, 1), (b, 3), (a, 4)]);
        assert_eq!(d.reconstruct(), f);
        assert_eq!(distinct_root_count(&f).unwrap(), 3);
        assert_eq!(
            squarefree_decompose_strict(&f),
            Err(PolyError::CharPUnsupportedShape(3))
        );
    }

    #[test]
    fn char_p_derivative_vanishes() {
        let f9 = make_fq(3, 2).unwrap();
        let b = Poly::linear_monic(f9.generator());
        let f = b.pow(9);
        assert!(f.derivative().is_zero());
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.parts, vec![(b, 9)]);
    }

    fn coprime_squarefree_family() -> impl Strategy<Value = Vec<Poly<Rational>>> {
        // distinct integer roots grouped into up to four factors
        (prop::collection::btree_set(-30i64..30, 1..9), prop::collection::vec(0usize..4, 9)).prop_map(
            |(roots, groups)| {
                let mut factors = vec![q(&[1]); 4];
                for (r, g) in roots.into_iter().zip(groups) {
                    factors[g] = &factors[g] * &q(&[-r, 1]);
                }
                factors
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reconstruction_recovers_multiplicities(gs in coprime_squarefree_family(),
                                                  scale in 1i64..7,
                                                  quad in prop::bool::ANY) {
            let mut gs = gs;
            if quad {
                // an irreducible quadratic joins the first group
                gs[0] = &gs[0] * &q(&[7, 0, 1]);
            }
            let mut f = q(&[scale]);
            let mut expected = Vec::new();
            for (i, g) in gs.iter().enumerate() {
                f = &f * &g.pow(i as u64 + 1);
                if g.deg().unwrap() > 0 {
                    expected.push((g.clone(), i as u32 + 1));
                }
            }
            let d = squarefree_decompose(&f).unwrap();
            prop_assert_eq!(&d.parts, &expected);
            prop_assert_eq!(d.unit.clone(), Rational::from_i64(scale));
            prop_assert_eq!(d.reconstruct(), f);
        }

        #[test]
        fn distinct_roots_stable_under_powers(gs in coprime_squarefree_family(), k in 1u64..4) {
            let f = gs.iter().fold(q(&[1]), |acc, g| &acc * g);
            prop_assume!(f.deg().unwrap() > 0);
            prop_assert_eq!(distinct_root_count(&f.pow(k)).unwrap(), distinct_root_count(&f).unwrap());
        }
    }
}
