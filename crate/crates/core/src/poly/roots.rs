use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{squarefree_decompose, Poly, PolyError};
use crate::fields::{is_prime, Field, PrimeField, Rational};

/// Rational roots of a polynomial together with what is left of its
/// squarefree part after removing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRootSplit {
    /// Distinct rational roots, ascending.
    pub roots: Vec<Rational>,
    /// Monic squarefree part divided by the linear factors of `roots`.
    pub residual: Poly<Rational>,
}

/// Distinct rational roots of `f`, ascending.
pub fn rational_roots(f: &Poly<Rational>) -> Result<Vec<Rational>, PolyError> {
    Ok(split_rational_roots(f)?.roots)
}

pub fn split_rational_roots(f: &Poly<Rational>) -> Result<RationalRootSplit, PolyError> {
    let sqf = squarefree_decompose(f)?.squarefree_part();
    let mut roots = Vec::new();
    let mut rest = sqf.clone();
    if rest.coeffs().first().is_some_and(Field::is_zero) {
        roots.push(Rational::zero());
        rest = rest.exact_div(&Poly::monomial(Rational::one(), 1))?;
    }
    roots.extend(nonzero_roots(&rest));
    roots.sort();
    let mut residual = sqf;
    for r in &roots {
        residual = residual.exact_div(&Poly::linear_monic(-r))?;
    }
    Ok(RationalRootSplit { roots, residual })
}

/// Roots of a squarefree polynomial with nonzero constant term.
fn nonzero_roots(f: &Poly<Rational>) -> Vec<Rational> {
    let n = f.deg().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    // integer coefficients c_0..c_n
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let c: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|a| a.numer() * (&lcm / a.denom()))
        .collect();
    let cn = c[n].clone();
    // Q(mu) = cn^{n-1} P(mu / cn) is monic with integer coefficients; its
    // roots are cn times the roots of P.
    let monic: Vec<BigInt> = (0..=n)
        .map(|i| if i == n { BigInt::one() } else { &c[i] * cn.pow((n - 1 - i) as u32) })
        .collect();
    let cauchy = monic[..n].iter().map(|a| a.abs()).max().unwrap_or_default() + 1u32;
    let bound = cauchy.min(monic[0].abs());

    let p = lifting_prime(&monic);
    let residues: Vec<i64> = (0..p as i64)
        .filter(|&r| eval_mod(&monic, &BigInt::from(r), &BigInt::from(p)).is_zero())
        .collect();

    let deriv: Vec<BigInt> = (1..=n).map(|i| &monic[i] * i).collect();
    let target = &bound * 2u32;
    let mut roots = Vec::new();
    for r0 in residues {
        let mut modulus = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fr = eval_mod(&monic, &r, &modulus);
            let dr = eval_mod(&deriv, &r, &modulus);
            let inv = mod_inverse(&dr, &modulus).expect("simple root modulo p");
            r = (&r - fr * inv).mod_floor(&modulus);
        }
        let half = &modulus / 2u32;
        let m = if r > half { r - &modulus } else { r };
        if eval(&monic, &m).is_zero() {
            roots.push(Rational::from_bigints(m, cn.clone()).expect("nonzero leading coefficient"));
        }
    }
    roots
}

/// Smallest odd prime modulo which `q` (monic) stays squarefree.
fn lifting_prime(q: &[BigInt]) -> u64 {
    (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let field = PrimeField::new(p).expect("prime");
            let bp = BigInt::from(p);
            let reduced = Poly::from_coeffs(
                q.iter()
                    .map(|a| field.element(a.mod_floor(&bp).to_i64().expect("residue")))
                    .collect(),
            );
            reduced.gcd(&reduced.derivative()).map(|g| g.deg() == Some(0)).unwrap_or(false)
        })
        .expect("a squarefree polynomial has finitely many bad primes")
}

fn eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::q;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn integer_and_fractional_roots() {
        // (2x - 1)(x + 3)(x^2 + 1)
        let f = &(&q(&[-1, 2]) * &q(&[3, 1])) * &q(&[1, 0, 1]);
        let split = split_rational_roots(&f).unwrap();
        assert_eq!(split.roots, vec![r(-3, 1), r(1, 2)]);
        assert_eq!(split.residual, q(&[1, 0, 1]));
    }

    #[test]
    fn repeated_and_zero_roots() {
        let f = &q(&[0, 0, 1]) * &q(&[-5, 1]).pow(3);
        assert_eq!(rational_roots(&f).unwrap(), vec![r(0, 1), r(5, 1)]);
        assert!(rational_roots(&q(&[-2, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&q(&[4])).unwrap().is_empty());
        assert_eq!(rational_roots(&q(&[])), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn large_roots() {
        let big = 1_000_000_007i64;
        let f = &q(&[-big, 1]) * &q(&[big, 3]);
        assert_eq!(rational_roots(&f).unwrap(), vec![r(-big, 3), r(big, 1)]);
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(nums in prop::collection::btree_set(-40i64..40, 0..5),
                                  den in 1i64..6,
                                  irreducible in 2i64..9,
                                  scale in 1i64..5) {
            let mut f = q(&[irreducible, 0, 1]).scale(&Rational::from_i64(scale));
            let mut expected = Vec::new();
            for &n in &nums {
                let root = r(n, den);
                f = &f * &Poly::linear_monic(-&root);
                expected.push(root);
            }
            expected.sort();
            prop_assert_eq!(rational_roots(&f).unwrap(), expected);
        }
    }
}
