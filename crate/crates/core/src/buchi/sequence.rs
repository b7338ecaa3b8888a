use super::BuchiError;
use crate::fields::Field;
use crate::poly::Poly;

/// `Δ^n u` with `Δu_i = u_{i+1} - u_i`; has length `len(u) - n`.
pub fn nth_differences<T: Field>(u: &[T], n: usize) -> Result<Vec<T>, BuchiError> {
    if u.len() < n + 1 {
        return Err(BuchiError::TooShort {
            needed: n + 1,
            got: u.len(),
        });
    }
    let mut d = u.to_vec();
    for _ in 0..n {
        d = d.windows(2).map(|w| w[1].sub(&w[0])).collect();
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormFit<T> {
    /// `a_0..a_{n-1}` with `u_k = k^n + a_{n-1} k^{n-1} + ... + a_0`.
    Form(Vec<T>),
    NotBuchi,
}

/// Fits `u_k = P(k)` (k starting at 1) with P monic of degree n, through
/// the Newton forward form `P(k) = Σ_j Δ^j u_1 C(k-1, j)`.
pub fn sequence_to_form<T: Field>(u: &[T], n: usize) -> Result<FormFit<T>, BuchiError> {
    let top = nth_differences(u, n)?;
    let one = u[0].one_like();
    let fact = (1..=n as i64).fold(one.clone(), |acc, i| acc.mul(&one.from_i64_like(i)));
    if top.iter().any(|d| *d != fact) {
        return Ok(FormFit::NotBuchi);
    }
    let mut p = Poly::zero();
    let mut basis = Poly::constant(one.clone());
    let mut diffs = u.to_vec();
    for j in 0..=n {
        p = &p + &basis.scale(&diffs[0]);
        // C(k-1, j+1) = C(k-1, j) (k-1-j) / (j+1)
        let step = Poly::linear_monic(one.from_i64_like(-(j as i64) - 1));
        let inv = one.from_i64_like(j as i64 + 1).inv()?;
        basis = (&basis * &step).scale(&inv);
        diffs = diffs.windows(2).map(|w| w[1].sub(&w[0])).collect();
        if diffs.is_empty() {
            break;
        }
    }
    let fits = u
        .iter()
        .enumerate()
        .all(|(i, v)| p.eval(&one.from_i64_like(i as i64 + 1)) == *v);
    if !fits || p.deg() != Some(n) || !p.is_monic() {
        return Ok(FormFit::NotBuchi);
    }
    let mut coeffs = p.into_coeffs();
    coeffs.pop();
    coeffs.resize(n, one.zero_like());
    Ok(FormFit::Form(coeffs))
}
