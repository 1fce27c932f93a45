//! m(r, d, k, g): the number of maximal rank-k subbundles of a general
//! stable bundle of rank r and degree d on a genus-g curve, in the case
//! where the quot scheme of maximal subbundles is zero-dimensional.
//!
//! Two independent evaluations are provided. The direct one sums
//! `(prod rho)^{b-g+1} / (prod_{i!=j}(rho_i - rho_j))^{g-1}` over k-subsets
//! of r-th roots of unity; the reduction one builds N_{d,e_max}(1) and
//! hands it to the twisted-invariant machinery.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::exact::{integer, make_root, rational_pow, to_integer, CycNumber};
use crate::poly::Polynomial;
use crate::twisted::{
    decompose_degree, s_invariants, twisted_invariant_with, GromovQuery, SInvariants,
};
use crate::vi::ViOptions;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub r: u32,
    pub d: i64,
    pub k: u32,
    pub g: i64,
}

impl CountQuery {
    /// Checks `1 <= k < r` and `g >= 2`. The zero-dimensionality condition
    /// is checked by the counting functions.
    pub fn new(r: u32, d: i64, k: u32, g: i64) -> Result<Self> {
        if k < 1 || k >= r {
            return Err(Error::InvalidRank { r, k });
        }
        if g < 2 {
            return Err(Error::InvalidInput(format!("need genus g >= 2, got {g}")));
        }
        Ok(CountQuery { r, d, k, g })
    }

    pub fn s_invariants(&self) -> SInvariants {
        s_invariants(self.r, self.k, self.d, self.g).expect("validated on construction")
    }

    fn require_zero_dim(&self) -> Result<SInvariants> {
        let s = self.s_invariants();
        if s.epsilon == 0 {
            Ok(s)
        } else {
            let (r, k) = (i64::from(self.r), i64::from(self.k));
            Err(Error::ConditionViolated {
                r: self.r,
                lhs: k * (r - k) * (self.g - 1),
                rhs: k * self.d,
                epsilon: s.epsilon,
            })
        }
    }
}

/// `k(r-k)(g-1) = k*d (mod r)`.
pub fn zero_dim_condition(r: u32, d: i64, k: u32, g: i64) -> bool {
    let (r, k) = (i64::from(r), i64::from(k));
    (k * (r - k) * (g - 1) - k * d).rem_euclid(r) == 0
}

/// Sign exponent `(k-1)(b*k - (g-1)k^2)/r`, which the zero-dimensionality
/// condition makes integral.
fn direct_sign_exponent(q: &CountQuery, b: i64) -> Result<i64> {
    let (r, k) = (i64::from(q.r), i64::from(q.k));
    let numerator = (k - 1) * (b * k - (q.g - 1) * k * k);
    if numerator % r != 0 {
        return Err(Error::NonIntegralSignExponent {
            numerator,
            denominator: r,
        });
    }
    Ok(numerator / r)
}

/// The closed root-of-unity formula for m(r, d, k, g).
pub fn count_direct(q: &CountQuery) -> Result<BigRational> {
    q.require_zero_dim()?;
    let (_, b) = decompose_degree(q.d, q.r);
    let sign = direct_sign_exponent(q, b)?;
    let r = q.r;
    let subsets: Vec<Vec<u32>> = (0..r).combinations(q.k as usize).collect();
    let total = subsets
        .par_iter()
        .map(|subset| -> Result<CycNumber> {
            let roots: Vec<CycNumber> = subset.iter().map(|&a| make_root(r, a.into())).collect();
            // prod of roots is a root itself
            let exp_sum: i64 = subset.iter().map(|&a| i64::from(a)).sum();
            let numerator = make_root(r, exp_sum * (b - q.g + 1));
            let mut vandermonde = CycNumber::one(r);
            for (i, x) in roots.iter().enumerate() {
                for (j, y) in roots.iter().enumerate() {
                    if i != j {
                        vandermonde *= &(x - y);
                    }
                }
            }
            Ok(&numerator * &vandermonde.pow(-(q.g - 1))?)
        })
        .try_reduce(|| CycNumber::zero(r), |a, b| Ok(a + b))?;
    let mut scale = rational_pow(&integer(i64::from(r)), i64::from(q.k) * (q.g - 1))?;
    if sign.rem_euclid(2) == 1 {
        scale = -scale;
    }
    Ok(total.as_rational()? * scale)
}

/// m(r, d, k, g) = N_{d, e_max}(1), evaluated through the Grassmannian
/// reduction.
pub fn count_via_reduction(q: &CountQuery) -> Result<BigRational> {
    count_via_reduction_with(q, ViOptions::default())
}

pub fn count_via_reduction_with(q: &CountQuery, opts: ViOptions) -> Result<BigRational> {
    let s = q.require_zero_dim()?;
    let gq = GromovQuery::new(q.r, q.k, q.g, q.d, s.e_max, Polynomial::one(q.k as usize))?;
    twisted_invariant_with(&gq, opts)
}

/// r^g.
pub fn closed_form_rank1(r: u32, g: i64) -> BigInt {
    num_traits::pow(BigInt::from(r), g as usize)
}

/// Genus-2, rank-2 closed forms: `r^3(r^2-1)/24` when b = 2 and
/// `r^3(r^2+2)/48` when r = 2b - 4.
pub fn closed_form_k2_g2(r: u32, b: i64) -> Result<BigInt> {
    if r < 3 {
        return Err(Error::NotApplicable(format!("r = {r} < 3")));
    }
    let r3 = BigInt::from(r).pow(3);
    let r2 = BigInt::from(r).pow(2);
    if b == 2 {
        Ok(r3 * (r2 - 1) / 24)
    } else if i64::from(r) == 2 * b - 4 {
        Ok(r3 * (r2 + 2) / 48)
    } else {
        Err(Error::NotApplicable(format!(
            "neither b = 2 nor r = 2b - 4 (r = {r}, b = {b})"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Also run the direct formula and require agreement.
    pub direct: bool,
    pub vi: ViOptions,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            direct: true,
            vi: ViOptions::default(),
        }
    }
}

/// Values produced by each evaluation route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPaths {
    pub direct: Option<BigRational>,
    pub reduction: BigRational,
    pub closed_form: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub query: CountQuery,
    pub value: BigInt,
    pub s_report: SInvariants,
    pub paths: CountPaths,
    pub warnings: Vec<String>,
}

pub fn count(q: &CountQuery) -> Result<CountResult> {
    count_with(q, CountOptions::default())
}

pub fn count_with(q: &CountQuery, opts: CountOptions) -> Result<CountResult> {
    let s_report = q.require_zero_dim()?;
    let reduction = count_via_reduction_with(q, opts.vi)?;
    let direct = if opts.direct {
        let v = count_direct(q)?;
        if v != reduction {
            return Err(Error::PathMismatch(format!(
                "m({}, {}, {}, {}): direct {v} vs reduction {reduction}",
                q.r, q.d, q.k, q.g
            )));
        }
        Some(v)
    } else {
        None
    };
    let value = to_integer(&reduction)?;

    let (_, b) = decompose_degree(q.d, q.r);
    let closed_form = match (q.k, q.g) {
        (1, _) => Some(closed_form_rank1(q.r, q.g)),
        (2, 2) => closed_form_k2_g2(q.r, b).ok(),
        _ => None,
    };
    if let Some(c) = &closed_form {
        if *c != value {
            return Err(Error::PathMismatch(format!(
                "m({}, {}, {}, {}): closed form {c} vs computed {value}",
                q.r, q.d, q.k, q.g
            )));
        }
    }

    let mut warnings = Vec::new();
    if !value.is_positive() {
        warnings.push(format!("count {value} is not positive"));
    }
    Ok(CountResult {
        query: *q,
        value,
        s_report,
        paths: CountPaths {
            direct,
            reduction,
            closed_form,
        },
        warnings,
    })
}
