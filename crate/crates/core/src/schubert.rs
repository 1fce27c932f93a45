//! Classical intersection numbers on Gr(k, r) by iterated Pieri.
//!
//! X_j = c_j of the dual tautological subbundle is the special class
//! σ_{1^j}, so multiplying by it adds a vertical strip of j boxes.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A partition inside the k x (r-k) box. Trailing zero parts are kept so
/// that `parts.len() == rows`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    cols: u32,
}

impl Partition {
    pub fn empty(rows: u32, cols: u32) -> Self {
        Partition {
            parts: vec![0; rows as usize],
            cols,
        }
    }

    pub fn new(parts: &[u32], rows: u32, cols: u32) -> Result<Self> {
        if parts.len() > rows as usize {
            return Err(Error::InvalidInput(format!(
                "{} parts do not fit in {rows} rows",
                parts.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.first().is_some_and(|&p| p > cols) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} exceeds {cols} columns"
            )));
        }
        let mut padded = parts.to_vec();
        padded.resize(rows as usize, 0);
        Ok(Partition {
            parts: padded,
            cols,
        })
    }

    pub fn full(rows: u32, cols: u32) -> Self {
        Partition {
            parts: vec![cols; rows as usize],
            cols,
        }
    }

    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        let n = self.parts.iter().take_while(|&&p| p > 0).count();
        &self.parts[..n]
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts().iter().join(","))
    }
}

/// Every μ in the box with μ/λ a vertical strip of size j.
pub fn pieri_vertical(lambda: &Partition, j: u32) -> Result<Vec<Partition>> {
    let rows = lambda.rows();
    if j > rows {
        return Err(Error::IndexOutOfRange {
            index: j as usize,
            max: rows as usize,
        });
    }
    let out = (0..rows as usize)
        .combinations(j as usize)
        .filter_map(|chosen| {
            let mut parts = lambda.parts.clone();
            for &i in &chosen {
                parts[i] += 1;
            }
            let fits = parts[0] <= lambda.cols && parts.windows(2).all(|w| w[0] >= w[1]);
            fits.then_some(Partition {
                parts,
                cols: lambda.cols,
            })
        })
        .collect();
    Ok(out)
}

/// The degree of `prod_j X_j` on Gr(k, r), for weights summing to k(r-k).
pub fn classical_intersection(r: u32, k: u32, weights: &[u32]) -> Result<BigInt> {
    if k < 1 || k >= r {
        return Err(Error::InvalidRank { r, k });
    }
    let cols = r - k;
    let top = i64::from(k) * i64::from(cols);
    let total: i64 = weights.iter().map(|&w| i64::from(w)).sum();
    if total != top {
        return Err(Error::DegreeMismatch {
            expected: top,
            actual: total,
        });
    }
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w > k) {
        return Err(Error::IndexOutOfRange {
            index: w as usize,
            max: k as usize,
        });
    }
    let mut state: BTreeMap<Partition, BigInt> = BTreeMap::new();
    state.insert(Partition::empty(k, cols), BigInt::one());
    for &w in weights {
        let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (lambda, c) in &state {
            for mu in pieri_vertical(lambda, w)? {
                *next.entry(mu).or_insert_with(BigInt::zero) += c;
            }
        }
        state = next;
    }
    Ok(state.remove(&Partition::full(k, cols)).unwrap_or_default())
}
