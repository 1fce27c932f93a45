//! Exact arithmetic: reduced big rationals and the cyclotomic fields
//! Q(zeta_r) = Q[x] / Phi_r(x).

mod cyclotomic;
mod number;
mod qpoly;

pub use cyclotomic::{cyclotomic_polynomial, CycPolynomial};
pub use number::{make_root, CycNumber};

pub use num_bigint::BigInt;
/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Zero};

/// Euler's totient, the degree of Phi_r.
pub fn totient(r: u32) -> usize {
    (1..=r).filter(|&i| i.gcd(&r) == 1).count()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact integer power of a rational; negative exponents invert.
pub fn rational_pow(base: &BigRational, exp: i64) -> crate::Result<BigRational> {
    if exp < 0 && base.is_zero() {
        return Err(crate::Error::DivisionByZero);
    }
    let mut acc = BigRational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut n = exp.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        n >>= 1;
        if n > 0 {
            b = &b * &b;
        }
    }
    Ok(acc)
}

/// Returns the integer value of `q`, or `NonIntegral`.
pub fn to_integer(q: &BigRational) -> crate::Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(crate::Error::NonIntegral(q.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &t) in expected.iter().enumerate() {
            assert_eq!(totient(i as u32 + 1), t);
        }
    }

    #[test]
    fn rationals_are_reduced() {
        let q = rational(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rational_pow(&integer(3), -2).unwrap(), rational(1, 9));
        assert_eq!(rational_pow(&integer(0), 0).unwrap(), integer(1));
        assert!(rational_pow(&integer(0), -1).is_err());
    }
}
