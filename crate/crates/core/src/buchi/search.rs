//! Integer Büchi sequences of squares.
//!
//! Second differences equal to 2 force `u_{i+2} = 2u_{i+1} - u_i + 2`, so a
//! seed `(x_1, x_2)` determines the whole sequence.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_MAX_LEN: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSequence {
    /// Non-negative roots `x_i` with `u_i = x_i^2`.
    #[serde(serialize_with = "crate::bounds::ser_big_vec")]
    pub roots: Vec<BigInt>,
    /// `x_i^2 = (i + ν)^2` for all i, for some integer ν.
    pub trivial: bool,
    /// Extension stopped at the length cap rather than at a non-square.
    pub capped: bool,
}

impl SquareSequence {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn squares(&self) -> Vec<BigInt> {
        self.roots.iter().map(|x| x * x).collect()
    }
}

/// Whether `x_i^2 = (i + ν)^2` for all i (1-based) for some ν. Since the
/// first term fixes `ν ∈ {x_1 - 1, -x_1 - 1}`, two candidates suffice.
pub fn is_trivial(roots: &[BigInt]) -> bool {
    let Some(x1) = roots.first() else {
        return true;
    };
    let candidates = [x1 - 1, -x1 - 1];
    candidates.iter().any(|nu| {
        roots
            .iter()
            .enumerate()
            .all(|(i, x)| (BigInt::from(i + 1) + nu as &BigInt).abs() == *x)
    })
}

fn exact_sqrt_i128(u: i128) -> Option<i128> {
    if u < 0 {
        return None;
    }
    let r = u.sqrt();
    (r * r == u).then_some(r)
}

fn exact_sqrt_big(u: &BigInt) -> Option<BigInt> {
    if u.is_negative() {
        return None;
    }
    let r = u.sqrt();
    (&r * &r == *u).then_some(r)
}

/// Roots of the maximal sequence from the seed, or `None` on i128 overflow.
fn extend_i128(x1: i128, x2: i128, max_len: usize) -> Option<(Vec<i128>, bool)> {
    let mut roots = vec![x1, x2];
    let (mut a, mut b) = (x1.checked_mul(x1)?, x2.checked_mul(x2)?);
    while roots.len() < max_len {
        let c = b.checked_mul(2)?.checked_sub(a)?.checked_add(2)?;
        match exact_sqrt_i128(c) {
            Some(r) => roots.push(r),
            None => return Some((roots, false)),
        }
        (a, b) = (b, c);
    }
    Some((roots, true))
}

fn extend_big(x1: &BigInt, x2: &BigInt, max_len: usize) -> (Vec<BigInt>, bool) {
    let mut roots = vec![x1.clone(), x2.clone()];
    let (mut a, mut b) = (x1 * x1, x2 * x2);
    while roots.len() < max_len {
        let c = &b * 2 - &a + 2;
        match exact_sqrt_big(&c) {
            Some(r) => roots.push(r),
            None => return (roots, false),
        }
        (a, b) = (b, c);
    }
    (roots, true)
}

/// Maximal square sequence starting at `x_1^2, x_2^2`.
pub fn extend_seed(x1: &BigInt, x2: &BigInt, max_len: usize) -> SquareSequence {
    let max_len = max_len.max(2);
    let fast = x1
        .to_i128()
        .zip(x2.to_i128())
        .and_then(|(a, b)| extend_i128(a, b, max_len));
    let (roots, capped) = match fast {
        Some((r, c)) => (r.into_iter().map(BigInt::from).collect(), c),
        None => extend_big(&x1.abs(), &x2.abs(), max_len),
    };
    let roots: Vec<BigInt> = roots.into_iter().map(|r| r.abs()).collect();
    SquareSequence {
        trivial: is_trivial(&roots),
        roots,
        capped,
    }
}

/// All maximal sequences with seeds in the given inclusive ranges and
/// length at least `min_len`, capped at `max_len` terms. Output is sorted
/// by seed.
pub fn search_integer_buchi(
    x1_range: RangeInclusive<u64>,
    x2_range: RangeInclusive<u64>,
    min_len: usize,
    max_len: usize,
) -> Vec<SquareSequence> {
    let x2s: Vec<u64> = x2_range.collect();
    let mut out: Vec<SquareSequence> = x1_range
        .into_par_iter()
        .flat_map_iter(|x1| {
            let x1 = BigInt::from(x1);
            x2s.iter()
                .map(move |&x2| extend_seed(&x1, &BigInt::from(x2), max_len))
                .filter(|s| s.len() >= min_len)
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.roots[..2].cmp(&b.roots[..2]));
    out
}

/// Second differences all 2 and every term a perfect square.
pub fn verify_sequence(s: &SquareSequence) -> bool {
    let u = s.squares();
    let all_squares = u.iter().all(|v| exact_sqrt_big(v).is_some());
    let second = u
        .windows(3)
        .all(|w| &w[2] - &w[1] * 2 + &w[0] == BigInt::from(2));
    all_squares && second && !s.roots.iter().any(|r| r.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classic_seed() {
        let s = extend_seed(&BigInt::from(6), &BigInt::from(23), DEFAULT_MAX_LEN);
        assert_eq!(s.roots, big(&[6, 23, 32, 39]));
        assert_eq!(s.squares(), big(&[36, 529, 1024, 1521]));
        assert!(!s.trivial);
        assert!(!s.capped);
        // next value 2*1521 - 1024 + 2 = 2020 lies strictly between 44^2 and 45^2
        assert!(exact_sqrt_big(&BigInt::from(2020)).is_none());
    }

    #[test]
    fn trivial_seed_runs_to_cap() {
        let s = extend_seed(&BigInt::from(1), &BigInt::from(2), 20);
        assert_eq!(s.roots, (1..=20).map(BigInt::from).collect::<Vec<_>>());
        assert!(s.trivial && s.capped);
        // ν negative: 3, 2, 1, 0, 1, 2, ...
        let s = extend_seed(&BigInt::from(3), &BigInt::from(2), 8);
        assert_eq!(s.roots, big(&[3, 2, 1, 0, 1, 2, 3, 4]));
        assert!(s.trivial && s.capped);
    }

    #[test]
    fn big_fallback_agrees() {
        let (r, c) = extend_big(&BigInt::from(6), &BigInt::from(23), 32);
        assert_eq!((r, c), (big(&[6, 23, 32, 39]), false));
        let huge = BigInt::from(10u128.pow(30));
        let s = extend_seed(&huge, &(&huge + 1), 6);
        assert!(s.trivial && s.capped);
    }

    #[test]
    fn small_search() {
        let found = search_integer_buchi(1..=50, 1..=50, 4, DEFAULT_MAX_LEN);
        let nontrivial: Vec<_> = found.iter().filter(|s| !s.trivial).collect();
        assert!(nontrivial.iter().any(|s| s.roots == big(&[6, 23, 32, 39])));
        assert!(found.iter().all(verify_sequence));
    }

    /// Brute force: all length-4 windows of squares below a bound.
    #[test]
    fn brute_force_oracle() {
        let mut expected = Vec::new();
        for a in 1i64..=40 {
            for b in 1i64..=40 {
                let c2 = 2 * b * b - a * a + 2;
                if c2 < 0 {
                    continue;
                }
                let c = (c2 as f64).sqrt().round() as i64;
                if c * c != c2 {
                    continue;
                }
                let d2 = 2 * c2 - b * b + 2;
                let d = (d2 as f64).sqrt().round() as i64;
                if d2 >= 0 && d * d == d2 {
                    expected.push((a, b));
                }
            }
        }
        let found: Vec<(i64, i64)> = search_integer_buchi(1..=40, 1..=40, 4, 8)
            .iter()
            .map(|s| (s.roots[0].to_i64().unwrap(), s.roots[1].to_i64().unwrap()))
            .collect();
        assert_eq!(found, expected);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn search_is_sound(a in 1u64..300, b in 1u64..300, w in 1u64..20) {
            for s in search_integer_buchi(a..=a + w, b..=b + w, 3, 16) {
                prop_assert!(verify_sequence(&s));
                prop_assert!(s.len() >= 3);
                prop_assert_eq!(s.trivial, is_trivial(&s.roots));
            }
        }
    }
}
