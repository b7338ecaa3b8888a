//! Explicit constants: the point bound M(n, g), the totally-multiple-fiber
//! bound, the discriminant zero bounds and the final inequality.
//!
//! Everything is exact; the inequality is evaluated over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("argument out of domain: {0}")]
pub struct DomainError(pub String);

fn require(cond: bool, msg: &str) -> Result<(), DomainError> {
    if cond {
        Ok(())
    } else {
        Err(DomainError(msg.to_string()))
    }
}

/// C(n, k) by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// C(3n-1, n).
fn c3(n: u64) -> BigInt {
    binomial(3 * n - 1, n)
}

/// M(n, g) = 2n(n+1)(g + n C(3n-1, n)).
pub fn bound_m(n: u64, g: u64) -> Result<BigInt, DomainError> {
    require(n >= 2, "n must be at least 2")?;
    Ok(BigInt::from(2 * n * (n + 1)) * (BigInt::from(g) + n * c3(n)))
}

/// At most 4 + 4g points have a totally multiple fiber.
pub fn bound_lemma_linear(g: u64) -> BigInt {
    BigInt::from(4) + BigInt::from(g) * 4
}

/// C(3v-1, v)(2v-2)d.
pub fn bound_disc_zeros(v: u64, d: u64) -> Result<BigInt, DomainError> {
    require(v >= 1, "v must be at least 1")?;
    require(d >= 1, "d must be at least 1")?;
    Ok(c3(v) * (2 * v - 2) * d)
}

/// C(3n-1, n)(2n-2)d + 2d.
pub fn bound_e(n: u64, d: u64) -> Result<BigInt, DomainError> {
    require(n >= 2, "n must be at least 2")?;
    Ok(bound_disc_zeros(n, d)? + 2 * d)
}

/// Whether `|B| < |B| m / mu + 2ng + 2n^2 C(3n-1, n)` holds.
pub fn check_final_inequality(m: u64, mu: u64, n: u64, g: u64, b: &BigInt) -> Result<bool, DomainError> {
    require(n >= 2, "n must be at least 2")?;
    require(1 <= m && m <= n && n <= mu, "need 1 <= m <= n <= mu")?;
    require(*b >= BigInt::zero(), "|B| must be non-negative")?;
    let bq = BigRational::from_integer(b.clone());
    let rhs = &bq * BigRational::new(BigInt::from(m), BigInt::from(mu))
        + BigRational::from_integer(BigInt::from(2 * n * g) + BigInt::from(2 * n * n) * c3(n));
    Ok(bq < rhs)
}

/// The two bounds the final inequality forces on |B| when `m < n` and
/// when `n < mu` respectively.
pub fn case_bounds(n: u64, g: u64) -> Result<(BigInt, BigInt), DomainError> {
    require(n >= 2, "n must be at least 2")?;
    let c = c3(n);
    let first = BigInt::from(2 * n * n * g) + BigInt::from(2 * n * n * n) * &c;
    let second = BigInt::from(2 * n * (n + 1) * g) + BigInt::from(2 * n * n * (n + 1)) * &c;
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    pub m: u64,
    pub mu: u64,
    /// Value of the final inequality at |B| = M; a contradiction is `false`.
    pub holds_at_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContradictionReplay {
    pub n: u64,
    pub g: u64,
    #[serde(serialize_with = "ser_big")]
    pub bound_m: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub case_m_below_n: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub case_n_below_mu: BigInt,
    pub branches: Vec<BranchCheck>,
}

impl ContradictionReplay {
    /// Every branch fails at |B| = M and both case bounds are at most M.
    pub fn is_contradiction(&self) -> bool {
        self.branches.iter().all(|b| !b.holds_at_m)
            && self.case_m_below_n <= self.bound_m
            && self.case_n_below_mu <= self.bound_m
    }
}

/// Evaluates the final inequality at |B| = M(n, g) for every `(m, mu)` with
/// `m < n <= mu` or `m <= n < mu`, `mu` up to `n + extra_mu`.
pub fn replay_contradiction(n: u64, g: u64, extra_mu: u64) -> Result<ContradictionReplay, DomainError> {
    let bound = bound_m(n, g)?;
    let (first, second) = case_bounds(n, g)?;
    let mut branches = Vec::new();
    for mu in n..=n + extra_mu {
        for m in 1..=n {
            if m == n && n == mu {
                continue;
            }
            branches.push(BranchCheck {
                m,
                mu,
                holds_at_m: check_final_inequality(m, mu, n, g, &bound)?,
            });
        }
    }
    Ok(ContradictionReplay {
        n,
        g,
        bound_m: bound,
        case_m_below_n: first,
        case_n_below_mu: second,
        branches,
    })
}

pub fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// JSON number when it fits in u64, else a decimal string.
pub fn big_to_json(v: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match v.to_u64() {
        Some(x) => x.into(),
        None => v.to_string().into(),
    }
}

pub fn ser_big_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Big<'a>(&'a BigInt);
    impl Serialize for Big<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Binomial through Pascal's triangle.
    fn pascal(n: u64, k: u64) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row.get(k as usize).cloned().unwrap_or_default()
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 0..30 {
            for k in 0..=n + 1 {
                assert_eq!(binomial(n, k), pascal(n, k));
            }
        }
    }

    #[test]
    fn constants() {
        assert_eq!(bound_m(2, 0).unwrap(), BigInt::from(240));
        assert_eq!(bound_m(3, 0).unwrap(), BigInt::from(4032));
        assert_eq!(bound_m(2, 1).unwrap(), BigInt::from(252));
        assert!(bound_m(1, 0).is_err());
        for g in 0..6 {
            assert_eq!(bound_lemma_linear(g), BigInt::from(4 + 4 * g));
        }
        assert_eq!(bound_disc_zeros(2, 1).unwrap(), BigInt::from(20));
        assert_eq!(bound_e(2, 1).unwrap(), BigInt::from(22));
        for d in 1..10 {
            assert_eq!(bound_disc_zeros(1, d).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn final_inequality_examples() {
        assert!(!check_final_inequality(1, 2, 2, 0, &BigInt::from(240)).unwrap());
        assert!(check_final_inequality(2, 2, 2, 0, &BigInt::zero()).unwrap());
        for b in [0u64, 1, 1000, 1 << 40] {
            assert!(check_final_inequality(3, 3, 3, 2, &BigInt::from(b)).unwrap());
        }
        assert!(check_final_inequality(3, 2, 2, 0, &BigInt::zero()).is_err());
    }

    #[test]
    fn contradiction_grid() {
        for n in 2..=6 {
            for g in 0..=3 {
                let r = replay_contradiction(n, g, 4).unwrap();
                assert!(r.is_contradiction(), "n={n} g={g}");
                assert!(r.case_m_below_n < r.bound_m);
                assert_eq!(r.case_n_below_mu, r.bound_m);
            }
        }
    }

    proptest! {
        #[test]
        fn bound_m_monotone(n in 2u64..12, g in 0u64..50) {
            let base = bound_m(n, g).unwrap();
            prop_assert!(bound_m(n + 1, g).unwrap() > base);
            prop_assert!(bound_m(n, g + 1).unwrap() > base);
        }
    }
}
