//! Degree bookkeeping for twisted Gromov invariants N_{d,e}(P) of a
//! general stable bundle of rank r and degree d, and their reduction to
//! Grassmannian invariants N_{0,e'}.

use num_rational::BigRational;

use crate::poly::Polynomial;
use crate::vi::{self, ViOptions};
use crate::{Error, Result};

/// s-invariant data of a general stable bundle.
///
/// `s_min = k(r-k)(g-1) + epsilon` with `0 <= epsilon < r` and
/// `s_min = k*d (mod r)`; `e_max = (d*k - s_min) / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SInvariants {
    pub r: u32,
    pub k: u32,
    pub d: i64,
    pub g: i64,
    pub s_min: i64,
    pub epsilon: i64,
    pub e_max: i64,
}

pub fn s_invariants(r: u32, k: u32, d: i64, g: i64) -> Result<SInvariants> {
    if k < 1 || k >= r {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k < r, got k={k}, r={r}"
        )));
    }
    if g < 2 {
        return Err(Error::InvalidInput(format!("need genus g >= 2, got {g}")));
    }
    let (ri, ki) = (i64::from(r), i64::from(k));
    let base = ki * (ri - ki) * (g - 1);
    let epsilon = (ki * d - base).rem_euclid(ri);
    let s_min = base + epsilon;
    let num = d * ki - s_min;
    debug_assert_eq!(num.rem_euclid(ri), 0);
    Ok(SInvariants {
        r,
        k,
        d,
        g,
        s_min,
        epsilon,
        e_max: num.div_euclid(ri),
    })
}

/// `(a, b)` with `d = a*r - b` and `0 <= b < r`.
pub fn decompose_degree(d: i64, r: u32) -> (i64, i64) {
    let r = i64::from(r);
    let b = (-d).rem_euclid(r);
    ((d + b) / r, b)
}

/// Non-fatal conditions attached to an evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// e exceeds e_max(d); the value is formal, not an intersection number.
    BeyondMaximalDegree { e: i64, e_max: i64 },
    /// g < 2 lies outside the geometric setting.
    GenusExtrapolation { g: i64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::BeyondMaximalDegree { e, e_max } => {
                write!(f, "e = {e} exceeds e_max = {e_max}; value is formal")
            }
            Warning::GenusExtrapolation { g } => {
                write!(
                    f,
                    "genus {g} < 2 is an extrapolation of the root-of-unity formula"
                )
            }
        }
    }
}

/// One twisted invariant N_{d,e}(P) on rank-k subsheaves of a rank-r
/// bundle over a genus-g curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GromovQuery {
    pub r: u32,
    pub k: u32,
    pub g: i64,
    pub d: i64,
    pub e: i64,
    pub p: Polynomial,
}

impl GromovQuery {
    pub fn new(r: u32, k: u32, g: i64, d: i64, e: i64, p: Polynomial) -> Result<Self> {
        if k < 1 || k >= r {
            return Err(Error::InvalidRank { r, k });
        }
        if g < 0 {
            return Err(Error::InvalidInput(format!("negative genus {g}")));
        }
        if p.k() != k as usize {
            return Err(Error::InvalidInput(format!(
                "polynomial has {} variables, expected {k}",
                p.k()
            )));
        }
        Ok(GromovQuery { r, k, g, d, e, p })
    }

    /// `(a, b)` from [`decompose_degree`].
    pub fn ab(&self) -> (i64, i64) {
        decompose_degree(self.d, self.r)
    }

    /// `s_e = d*k - r*e`.
    pub fn s_e(&self) -> i64 {
        self.d * i64::from(self.k) - i64::from(self.r) * self.e
    }

    /// `s_e + k(r-k)(1-g)`.
    pub fn required_degree(&self) -> i64 {
        let (r, k) = (i64::from(self.r), i64::from(self.k));
        self.s_e() + k * (r - k) * (1 - self.g)
    }

    pub fn check_degree(&self) -> Result<()> {
        let actual = self.p.weighted_degree()? as i64;
        let expected = self.required_degree();
        if actual == expected {
            Ok(())
        } else {
            Err(Error::DegreeMismatch { expected, actual })
        }
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        if self.g < 2 {
            out.push(Warning::GenusExtrapolation { g: self.g });
        } else if let Ok(s) = s_invariants(self.r, self.k, self.d, self.g) {
            if self.e > s.e_max {
                out.push(Warning::BeyondMaximalDegree {
                    e: self.e,
                    e_max: s.e_max,
                });
            }
        }
        out
    }
}

/// N_{d,e}(P) = N_{0, e - a*k}(X_k^b P) for `d = a*r - b`.
pub fn reduce_to_grassmannian(q: &GromovQuery) -> Result<(i64, Polynomial)> {
    q.check_degree()?;
    let (a, b) = q.ab();
    let e = q.e - a * i64::from(q.k);
    let p = q.p.times_top(b as u32);
    let actual = p.weighted_degree()? as i64;
    let expected = vi::required_degree(q.r, q.k, q.g, e);
    if actual != expected {
        // cannot happen when the input degree holds
        return Err(Error::DegreeMismatch { expected, actual });
    }
    Ok((e, p))
}

/// `d -> d + r*d1`, `e -> e + k*d1`: tensoring by a line bundle of degree d1.
pub fn tensor_shift(q: &GromovQuery, d1: i64) -> GromovQuery {
    GromovQuery {
        d: q.d + i64::from(q.r) * d1,
        e: q.e + i64::from(q.k) * d1,
        ..q.clone()
    }
}

pub use crate::vi::recursion_shift;

pub fn twisted_invariant(q: &GromovQuery) -> Result<BigRational> {
    twisted_invariant_with(q, ViOptions::default())
}

pub fn twisted_invariant_with(q: &GromovQuery, opts: ViOptions) -> Result<BigRational> {
    let (e, p) = reduce_to_grassmannian(q)?;
    vi::vi_sum_with(q.r, q.k, q.g, e, &p, opts)
}
