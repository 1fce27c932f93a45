//! Dense polynomials over Q, ascending coefficients, used only for the
//! extended Euclidean inversion.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `den` must be trimmed and nonzero.
pub(crate) fn divrem(num: &[BigRational], den: &[BigRational]) -> (QPoly, QPoly) {
    let dn = den.len() - 1;
    let lead_inv = den[dn].recip();
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    rem.truncate(dn);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}
