use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Field, FieldError, Rational};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        // p < 2^32 keeps products inside u64 after widening to u128 anyway,
        // but also keeps enumeration sane.
        if !is_prime(p) || p >= 1 << 32 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> Fp {
        Fp {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn zero(&self) -> Fp {
        self.element(0)
    }

    pub fn one(&self) -> Fp {
        self.element(1)
    }

    /// Reduces `a/b` modulo p.
    pub fn from_rational(&self, r: &Rational) -> Result<Fp, FieldError> {
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_i64().expect("reduced residue fits");
        let d = r.denom().mod_floor(&p).to_i64().expect("reduced residue fits");
        self.element(n).div(&self.element(d))
    }

    pub fn elements(&self) -> Vec<Fp> {
        (0..self.p).map(|v| Fp { value: v, p: self.p }).collect()
    }
}

/// Element of F_p stored as its canonical residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = (self.value as u128 + rhs.value as u128) % self.p as u128;
        Fp { value: s as u64, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = (self.value as u128 + self.p as u128 - rhs.value as u128) % self.p as u128;
        Fp { value: s as u64, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = (self.value as u128 * rhs.value as u128) % self.p as u128;
        Fp { value: s as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(Fp {
            value: t0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp {
            value: (n as i128).rem_euclid(self.p as i128) as u64,
            p: self.p,
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn same_field(&self, other: &Self) -> bool {
        self.p == other.p
    }
    fn pth_root(&self) -> Option<Self> {
        Some(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(7919));
        assert!(!is_prime(7917));
        assert_eq!(PrimeField::new(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn inverse_of_two_mod_three() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.element(2).inv().unwrap(), f3.element(2));
        assert_eq!(f3.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn enumerate_f5() {
        let vals: Vec<u64> = PrimeField::new(5).unwrap().elements().iter().map(Fp::value).collect();
        assert_eq!(vals, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rational_reduction() {
        let f7 = PrimeField::new(7).unwrap();
        let half = f7.from_rational(&Rational::new(1, 2).unwrap()).unwrap();
        assert_eq!(half, f7.element(4));
        let neg = f7.from_rational(&Rational::new(-3, 5).unwrap()).unwrap();
        assert_eq!(neg.mul(&f7.element(5)), f7.element(-3));
        assert!(f7.from_rational(&Rational::new(1, 7).unwrap()).is_err());
    }

    #[test]
    fn fermat() {
        let f13 = PrimeField::new(13).unwrap();
        for a in f13.elements() {
            assert_eq!(a.pow(13), a);
        }
    }
}
