use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclotomic::{cyclotomic_polynomial, CycPolynomial};
use super::qpoly;
use crate::{Error, Result};

/// An element of Q(zeta_r), stored as the coefficient vector of its
/// representative of degree below phi(r).
#[derive(Clone)]
pub struct CycNumber {
    modulus: Arc<CycPolynomial>,
    coeffs: Vec<BigRational>,
}

/// zeta_r^(a mod r).
pub fn make_root(r: u32, a: i64) -> CycNumber {
    CycNumber::root(r, a)
}

impl CycNumber {
    pub fn zero(r: u32) -> Self {
        let modulus = cyclotomic_polynomial(r);
        let coeffs = vec![BigRational::zero(); modulus.degree()];
        CycNumber { modulus, coeffs }
    }

    pub fn one(r: u32) -> Self {
        Self::from_rational(r, BigRational::one())
    }

    /// Embeds a rational as a constant.
    pub fn from_rational(r: u32, q: BigRational) -> Self {
        let mut x = Self::zero(r);
        x.coeffs[0] = q;
        x
    }

    pub fn root(r: u32, a: i64) -> Self {
        let e = a.rem_euclid(i64::from(r)) as usize;
        let modulus = cyclotomic_polynomial(r);
        let mut raw = vec![BigRational::zero(); (e + 1).max(modulus.degree())];
        raw[e] = BigRational::one();
        Self::from_raw(modulus, raw)
    }

    /// Builds an element from an arbitrary-length coefficient vector in
    /// the powers of zeta_r, reducing it modulo Phi_r.
    pub fn from_coeffs(r: u32, coeffs: Vec<BigRational>) -> Self {
        let modulus = cyclotomic_polynomial(r);
        let mut raw = coeffs;
        if raw.len() < modulus.degree() {
            raw.resize(modulus.degree(), BigRational::zero());
        }
        Self::from_raw(modulus, raw)
    }

    fn from_raw(modulus: Arc<CycPolynomial>, mut raw: Vec<BigRational>) -> Self {
        reduce(&mut raw, &modulus);
        CycNumber {
            modulus,
            coeffs: raw,
        }
    }

    pub fn order(&self) -> u32 {
        self.modulus.order()
    }

    /// Coefficients of 1, zeta, ..., zeta^(phi(r)-1).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNumber {
            modulus: Arc::clone(&self.modulus),
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNumber {
            modulus: Arc::clone(&self.modulus),
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::from_raw(Arc::clone(&self.modulus), raw)
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_r.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r0: qpoly::QPoly = self.modulus.rational_coeffs().to_vec();
        let mut r1: qpoly::QPoly = self.coeffs.clone();
        qpoly::trim(&mut r1);
        let mut s0: qpoly::QPoly = Vec::new();
        let mut s1: qpoly::QPoly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = qpoly::divrem(&r0, &r1);
            let s2 = qpoly::sub(&s0, &qpoly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_r is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let raw: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        let mut padded = raw;
        if padded.len() < self.coeffs.len() {
            padded.resize(self.coeffs.len(), BigRational::zero());
        }
        Ok(Self::from_raw(Arc::clone(&self.modulus), padded))
    }

    /// `self^n`; negative exponents go through [`CycNumber::invert`].
    /// `0^0` is 1.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Result<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Evaluates at exp(2 pi i / r) in double precision.
    pub fn embed_numeric(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / f64::from(self.order()));
        // Horner from the top coefficient
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| {
            acc * zeta + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }
}

/// In-place reduction modulo the monic Phi_r; leaves exactly phi(r)
/// coefficients.
fn reduce(raw: &mut Vec<BigRational>, modulus: &CycPolynomial) {
    let n = modulus.degree();
    let phi = modulus.rational_coeffs();
    while raw.len() > n {
        let top = raw.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = raw.len() - n;
        for (j, pj) in phi[..n].iter().enumerate() {
            if !pj.is_zero() {
                raw[shift + j] -= &top * pj;
            }
        }
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber(r={}, {})", self.order(), self)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on mismatched orders; the try_* methods report it.
macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
                self.$inner(rhs)
            }
        }

        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }

        impl $assign_tr<&CycNumber> for CycNumber {
            fn $assign(&mut self, rhs: &CycNumber) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

binop!(Add, add, add_unchecked, AddAssign, add_assign);
binop!(Sub, sub, sub_unchecked, SubAssign, sub_assign);
binop!(Mul, mul, mul_unchecked, MulAssign, mul_assign);

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}
