//! Root-of-unity sums for Grassmannian Gromov invariants.
//!
//! For 1 <= k < r and a weighted-homogeneous class P(X_1..X_k) of weighted
//! degree `-e*r + k(r-k)(1-g)`, the invariant N_{0,e}(P) is
//!
//! ```text
//! r^{k(g-1)} (-1)^{e(k-1)} / k!  *  sum over k-tuples of distinct r-th
//!   roots of unity of  P(sigma_1(rho)..sigma_k(rho)) / (prod rho_i * prod_{i!=j}(rho_i - rho_j))^{g-1}
//! ```
//!
//! The product over `i != j` runs over ordered pairs. The summand is
//! symmetric, so the tuple sum is `k!` times the sum over k-subsets, which
//! is what gets enumerated.

use itertools::Itertools;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact::{integer, make_root, rational_pow, CycNumber};
use crate::poly::{Monomial, Polynomial};
use crate::{Error, Result};

/// A set of k distinct exponents in [0, r), standing for the roots
/// zeta_r^a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSubset {
    r: u32,
    exponents: Vec<u32>,
}

impl RootSubset {
    /// `exponents` must be strictly increasing and below `r`.
    pub fn new(r: u32, exponents: Vec<u32>) -> Result<Self> {
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "root exponents {exponents:?} are not strictly increasing"
            )));
        }
        if exponents.last().is_some_and(|&a| a >= r) {
            return Err(Error::InvalidInput(format!(
                "root exponent {} not below r = {r}",
                exponents.last().unwrap()
            )));
        }
        Ok(RootSubset { r, exponents })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn roots(&self) -> Vec<CycNumber> {
        self.exponents
            .iter()
            .map(|&a| make_root(self.r, i64::from(a)))
            .collect()
    }

    /// Multiplies every root by zeta^shift.
    fn rotated(&self, shift: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .exponents
            .iter()
            .map(|&a| (a + shift) % self.r)
            .collect();
        v.sort_unstable();
        v
    }

    /// If this subset is the lexicographically least member of its orbit
    /// under simultaneous rotation, returns the orbit size.
    fn orbit_weight(&self) -> Option<u64> {
        let mut size = 1u64;
        for shift in 1..self.r {
            let rot = self.rotated(shift);
            if rot < self.exponents {
                return None;
            }
            if rot == self.exponents {
                // rotation period found; the orbit has `shift` members
                return Some(u64::from(shift));
            }
            size += 1;
        }
        Some(size)
    }
}

/// All elementary symmetric polynomials sigma_0..sigma_k of `roots`,
/// built up as the coefficients of prod (1 + rho_i t).
pub fn elementary_symmetric_all(r: u32, roots: &[CycNumber]) -> Vec<CycNumber> {
    let mut sigma = vec![CycNumber::one(r)];
    for rho in roots {
        sigma.push(CycNumber::zero(r));
        for j in (1..sigma.len()).rev() {
            let term = &sigma[j - 1] * rho;
            sigma[j] += &term;
        }
    }
    sigma
}

/// sigma_j of `roots`.
pub fn elementary_symmetric(r: u32, roots: &[CycNumber], j: usize) -> Result<CycNumber> {
    if j > roots.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: roots.len(),
        });
    }
    Ok(elementary_symmetric_all(r, roots).swap_remove(j))
}

/// Per-subset data shared by every monomial of a polynomial.
struct SubsetTerms {
    sigma: Vec<CycNumber>,
    // (prod rho_i * prod_{i != j} (rho_i - rho_j))^{-(g-1)}
    weight: CycNumber,
}

impl SubsetTerms {
    fn new(s: &RootSubset, g: i64) -> Result<Self> {
        let r = s.r();
        let roots = s.roots();
        let sigma = elementary_symmetric_all(r, &roots);
        let mut base = sigma[roots.len()].clone();
        for (i, a) in roots.iter().enumerate() {
            for (j, b) in roots.iter().enumerate() {
                if i != j {
                    base *= &(a - b);
                }
            }
        }
        let weight = base.pow(-(g - 1))?;
        Ok(SubsetTerms { sigma, weight })
    }

    fn monomial(&self, m: &Monomial) -> CycNumber {
        let r = self.weight.order();
        let mut acc = CycNumber::one(r);
        for (j, &mult) in m.exponents().iter().enumerate() {
            if mult > 0 {
                acc *= &self.sigma[j + 1]
                    .pow(i64::from(mult))
                    .expect("nonnegative power");
            }
        }
        acc
    }

    fn polynomial(&self, p: &Polynomial) -> CycNumber {
        let r = self.weight.order();
        let mut acc = CycNumber::zero(r);
        for (c, m) in p.terms() {
            acc += &self.monomial(m).scale(c);
        }
        &acc * &self.weight
    }
}

/// One summand `prod_j sigma_j^{m_j} * (prod rho_i prod_{i!=j}(rho_i - rho_j))^{-(g-1)}`.
pub fn vi_summand(s: &RootSubset, m: &Monomial, g: i64) -> Result<CycNumber> {
    if m.k() != s.k() {
        return Err(Error::InvalidInput(format!(
            "monomial over {} variables, subset of {} roots",
            m.k(),
            s.k()
        )));
    }
    let t = SubsetTerms::new(s, g)?;
    Ok(&t.monomial(m) * &t.weight)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViOptions {
    /// Spread subset evaluation over the rayon pool.
    pub parallel: bool,
    /// Sum one representative per rotation orbit, weighted by orbit size.
    /// The summand is rotation invariant whenever the degree condition
    /// holds, so the result is identical.
    pub orbit_pruning: bool,
}

impl Default for ViOptions {
    fn default() -> Self {
        ViOptions {
            parallel: true,
            orbit_pruning: false,
        }
    }
}

/// Weighted degree required of P for N_{0,e}: `-e*r + k(r-k)(1-g)`.
pub fn required_degree(r: u32, k: u32, g: i64, e: i64) -> i64 {
    let (r, k) = (i64::from(r), i64::from(k));
    -e * r + k * (r - k) * (1 - g)
}

fn check_query(r: u32, k: u32, g: i64, e: i64, p: &Polynomial) -> Result<()> {
    if k < 1 || k >= r {
        return Err(Error::InvalidRank { r, k });
    }
    if p.k() != k as usize {
        return Err(Error::InvalidInput(format!(
            "polynomial has {} variables, expected {k}",
            p.k()
        )));
    }
    let actual = p.weighted_degree()? as i64;
    let expected = required_degree(r, k, g, e);
    if actual != expected {
        return Err(Error::DegreeMismatch { expected, actual });
    }
    Ok(())
}

/// `(-1)^{e(k-1)} r^{k(g-1)}`.
///
/// With the ordered-pair Vandermonde product in the denominator this is
/// the sign that reproduces classical Schubert calculus at g = 0.
fn prefactor(r: u32, k: u32, g: i64, e: i64) -> BigRational {
    let scale = rational_pow(&integer(i64::from(r)), i64::from(k) * (g - 1)).expect("r is nonzero");
    if (e * (i64::from(k) - 1)).rem_euclid(2) == 1 {
        -scale
    } else {
        scale
    }
}

/// k-subsets to sum over, with their multiplicities.
fn subsets(r: u32, k: u32, orbit_pruning: bool) -> Vec<(RootSubset, u64)> {
    (0..r)
        .combinations(k as usize)
        .filter_map(|v| {
            let s = RootSubset { r, exponents: v };
            if orbit_pruning {
                s.orbit_weight().map(|w| (s, w))
            } else {
                Some((s, 1))
            }
        })
        .collect()
}

/// The exact cyclotomic subset sum, before the prefactor.
pub fn vi_subset_sum(r: u32, k: u32, g: i64, p: &Polynomial, opts: ViOptions) -> Result<CycNumber> {
    let work = subsets(r, k, opts.orbit_pruning);
    let eval = |(s, w): &(RootSubset, u64)| -> Result<CycNumber> {
        let v = SubsetTerms::new(s, g)?.polynomial(p);
        Ok(if *w == 1 {
            v
        } else {
            v.scale(&integer(*w as i64))
        })
    };
    let add = |a: Result<CycNumber>, b: Result<CycNumber>| Ok(a? + b?);
    if opts.parallel {
        work.par_iter()
            .map(eval)
            .reduce(|| Ok(CycNumber::zero(r)), add)
    } else {
        work.iter().map(eval).fold(Ok(CycNumber::zero(r)), add)
    }
}

/// Exact N_{0,e}(P) on Gr(k, r) for a genus-g source curve.
///
/// g < 2 lies outside the geometric setting and is accepted only for
/// oracle comparisons.
pub fn vi_sum(r: u32, k: u32, g: i64, e: i64, p: &Polynomial) -> Result<BigRational> {
    vi_sum_with(r, k, g, e, p, ViOptions::default())
}

pub fn vi_sum_with(
    r: u32,
    k: u32,
    g: i64,
    e: i64,
    p: &Polynomial,
    opts: ViOptions,
) -> Result<BigRational> {
    check_query(r, k, g, e, p)?;
    let total = vi_subset_sum(r, k, g, p, opts)?;
    Ok(total.as_rational()? * prefactor(r, k, g, e))
}

/// Same sum in double precision, each summand built from the numerically
/// embedded roots. Returns the complex result; the imaginary part should
/// vanish up to rounding.
pub fn vi_sum_numeric(r: u32, k: u32, g: i64, e: i64, p: &Polynomial) -> Result<Complex64> {
    check_query(r, k, g, e, p)?;
    let roots: Vec<Complex64> = (0..r)
        .map(|a| make_root(r, i64::from(a)).embed_numeric())
        .collect();
    let coeffs: Vec<(f64, &Monomial)> = p
        .terms()
        .iter()
        .map(|(c, m)| (c.to_f64().unwrap_or(f64::NAN), m))
        .collect();
    let gm1 = i32::try_from(g - 1).map_err(|_| Error::InvalidInput(format!("genus {g}")))?;

    let mut re = NeumaierSum::default();
    let mut im = NeumaierSum::default();
    for subset in (0..r as usize).combinations(k as usize) {
        let rho: Vec<Complex64> = subset.iter().map(|&a| roots[a]).collect();
        let mut sigma = vec![Complex64::new(1.0, 0.0)];
        for &x in &rho {
            sigma.push(Complex64::zero());
            for j in (1..sigma.len()).rev() {
                let t = sigma[j - 1] * x;
                sigma[j] += t;
            }
        }
        let mut base = sigma[k as usize];
        for (i, a) in rho.iter().enumerate() {
            for (j, b) in rho.iter().enumerate() {
                if i != j {
                    base *= a - b;
                }
            }
        }
        let weight = base.powi(-gm1);
        let mut value = Complex64::zero();
        for &(c, m) in &coeffs {
            let mut t = Complex64::new(c, 0.0);
            for (j, &mult) in m.exponents().iter().enumerate() {
                t *= sigma[j + 1].powu(mult);
            }
            value += t;
        }
        let v = value * weight;
        re.add(v.re);
        im.add(v.im);
    }
    let scale = prefactor(r, k, g, e).to_f64().unwrap_or(f64::NAN);
    Ok(Complex64::new(re.total(), im.total()) * scale)
}

/// Compensated summation (Neumaier's variant of Kahan).
#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    carry: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `(e - k, X_k^r * P)`; N_{0,e}(P) = N_{0,e-k}(X_k^r P).
pub fn recursion_shift(e: i64, p: &Polynomial, r: u32, k: u32) -> (i64, Polynomial) {
    debug_assert_eq!(p.k(), k as usize);
    (e - i64::from(k), p.times_top(r))
}
