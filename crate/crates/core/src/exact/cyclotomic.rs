use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The r-th cyclotomic polynomial, monic with integer coefficients in
/// ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPolynomial {
    order: u32,
    coeffs: Vec<BigInt>,
    // same coefficients, pre-lifted for reduction in Q[x]
    rational: Vec<BigRational>,
}

impl CycPolynomial {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients from the constant term up; the last entry is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn rational_coeffs(&self) -> &[BigRational] {
        &self.rational
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

type Cache = RwLock<HashMap<u32, Arc<CycPolynomial>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Phi_r, computed as (x^r - 1) divided exactly by Phi_d for every proper
/// divisor d of r. Results are cached for the lifetime of the process.
///
/// Panics if `r == 0`.
pub fn cyclotomic_polynomial(r: u32) -> Arc<CycPolynomial> {
    assert!(r >= 1, "cyclotomic order must be positive");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&r) {
        return Arc::clone(p);
    }

    // x^r - 1
    let mut num: Vec<BigInt> = vec![BigInt::zero(); r as usize + 1];
    num[0] = BigInt::from(-1);
    num[r as usize] = BigInt::one();

    for d in (1..r).filter(|&d| r.is_multiple_of(d)) {
        let divisor = cyclotomic_polynomial(d);
        num = divide_monic_exact(&num, divisor.coeffs());
    }

    let rational = num.iter().cloned().map(BigRational::from_integer).collect();
    let poly = Arc::new(CycPolynomial {
        order: r,
        coeffs: num,
        rational,
    });
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    Arc::clone(guard.entry(r).or_insert(poly))
}

fn divide_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(
        rem.iter().all(Zero::is_zero),
        "cyclotomic division left a remainder"
    );
    quot
}
