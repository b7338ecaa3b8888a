use super::{Poly, PolyError};
use crate::fields::Field;

/// Resultant with respect to the actual degrees of `a` and `b`, computed by
/// the Euclidean remainder sequence. Zero if either input is zero.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<F, PolyError> {
    a.check_compatible(b)?;
    let any = match a.coeffs().first().or(b.coeffs().first()) {
        Some(c) => c.clone(),
        None => return Err(PolyError::ZeroPolynomial),
    };
    if a.is_zero() || b.is_zero() {
        return Ok(any.zero_like());
    }
    let mut acc = any.one_like();
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let m = a.deg().expect("nonzero");
        let n = b.deg().expect("nonzero");
        if n == 0 {
            return Ok(acc.mul(&b.lc().expect("nonzero").pow(m as u64)));
        }
        let r = a.rem(&b)?;
        let Some(k) = r.deg() else {
            return Ok(any.zero_like());
        };
        // res(a, b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
        let mut factor = b.lc().expect("nonzero").pow((m - k) as u64);
        if (m * n) % 2 == 1 {
            factor = factor.neg();
        }
        acc = acc.mul(&factor);
        a = b;
        b = r;
    }
}

/// `(-1)^{v(v-1)/2} Res(f, f') / lc(f)` with `f'` taken at formal degree
/// `v - 1`, so the value is correct in positive characteristic too.
pub fn discriminant<F: Field>(f: &Poly<F>) -> Result<F, PolyError> {
    let v = f.deg().ok_or(PolyError::ZeroPolynomial)?;
    if v == 0 {
        return Err(PolyError::DegreeTooSmall);
    }
    let lc = f.lc().expect("nonzero").clone();
    let df = f.derivative();
    let Some(dd) = df.deg() else {
        return Ok(lc.zero_like());
    };
    let r = resultant(f, &df)?.mul(&lc.pow((v - 1 - dd) as u64));
    let mut d = r.div(&lc)?;
    if (v * (v - 1) / 2) % 2 == 1 {
        d = d.neg();
    }
    Ok(d)
}
