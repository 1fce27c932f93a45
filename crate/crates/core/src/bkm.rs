//! The auxiliary sums `B(k, m) = sum_{z^r = 1, z != 1} z^m (1 - z)^{-k}`,
//! evaluated directly in Q(zeta_r) and by a recursion over rationals, and
//! the rank-2 specialisation of the maximal-subbundle count built on them.
//!
//! The recursion rests on
//!
//! ```text
//! B(k, m) = B(k, m-1) - B(k-1, m-1)
//! sum_{i=0}^{r-1} B(k, i) = 0
//! ```
//!
//! which give `B(k, m) = B(k, 0) - sum_{i<m} B(k-1, i)` and
//! `B(k, 0) = (1/r) sum_{i=0}^{r-2} (r-i-1) B(k-1, i)`, starting from
//! `B(0, 0) = r - 1` and `B(0, m) = -1` otherwise.

use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{integer, make_root, rational_pow, CycNumber};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BQuery {
    r: u32,
    k: u32,
    m: u32,
}

impl BQuery {
    /// `m` is reduced modulo `r`.
    pub fn new(r: u32, k: u32, m: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInput(format!(
                "B(k, m) needs r >= 2, got {r}"
            )));
        }
        Ok(BQuery {
            r,
            k,
            m: m.rem_euclid(i64::from(r)) as u32,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

pub fn b_direct(q: &BQuery) -> Result<BigRational> {
    let r = q.r;
    let one = CycNumber::one(r);
    let mut total = CycNumber::zero(r);
    for a in 1..i64::from(r) {
        let z = make_root(r, a);
        let inv = (&one - &z).invert()?.pow(i64::from(q.k))?;
        total += &(&make_root(r, a * i64::from(q.m)) * &inv);
    }
    total.as_rational()
}

/// Memoised rows `B(k, 0..r)` for one r, grown on demand.
#[derive(Debug, Clone)]
pub struct BTable {
    r: u32,
    rows: Vec<Vec<BigRational>>,
}

impl BTable {
    pub fn new(r: u32) -> Self {
        let base = (0..r)
            .map(|i| {
                if i == 0 {
                    integer(i64::from(r) - 1)
                } else {
                    integer(-1)
                }
            })
            .collect();
        BTable {
            r,
            rows: vec![base],
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `B(k, 0), ..., B(k, r-1)`.
    pub fn row(&mut self, k: u32) -> &[BigRational] {
        let r = self.r as usize;
        let inv_r = integer(self.r as i64).recip();
        while self.rows.len() <= k as usize {
            let prev = self.rows.last().expect("base row");
            let b0: BigRational = prev[..r - 1]
                .iter()
                .enumerate()
                .map(|(i, v)| v * integer((r - i - 1) as i64))
                .sum::<BigRational>()
                * &inv_r;
            let mut next = Vec::with_capacity(r);
            let mut partial = BigRational::zero();
            for prev_i in prev.iter() {
                next.push(&b0 - &partial);
                partial += prev_i;
            }
            self.rows.push(next);
        }
        &self.rows[k as usize]
    }

    pub fn get(&mut self, k: u32, m: i64) -> BigRational {
        let m = m.rem_euclid(i64::from(self.r)) as usize;
        self.row(k)[m].clone()
    }
}

/// B(k, m) from the recursion alone; no cyclotomic arithmetic.
pub fn b_recursive(q: &BQuery) -> BigRational {
    BTable::new(q.r).get(q.k, q.m.into())
}

/// `-(r^2 + r(6 - 6m) + 6m^2 - 12m + 5) / 12`, valid for `0 < m < r - 1`.
pub fn b2_closed_form(r: u32, m: i64) -> BigRational {
    let r = i64::from(r);
    -integer(r * r + r * (6 - 6 * m) + 6 * m * m - 12 * m + 5) / integer(12)
}

/// m(r, d, 2, g) for `d = a*r - b`, through B(2(g-1), b-g+1):
///
/// ```text
/// r^{2(g-1)+1} (-1)^{g-1 + (2b-4(g-1))/r} / 2 * B(2(g-1), b-g+1)
/// ```
pub fn m_rank2(r: u32, b: i64, g: i64) -> Result<BigRational> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("need genus g >= 2, got {g}")));
    }
    if r < 3 || !(0..i64::from(r)).contains(&b) {
        return Err(Error::InvalidInput(format!(
            "need r >= 3 and 0 <= b < r, got r={r}, b={b}"
        )));
    }
    let ri = i64::from(r);
    let excess = 2 * b - 4 * (g - 1);
    if excess.rem_euclid(ri) != 0 {
        return Err(Error::ConditionViolated {
            r,
            lhs: 4 * (g - 1),
            rhs: 2 * b,
            epsilon: (-excess).rem_euclid(ri),
        });
    }
    let sign_exp = g - 1 + excess / ri;
    let b_value = b_direct(&BQuery::new(r, (2 * (g - 1)) as u32, b - g + 1)?)?;
    let mut scale = rational_pow(&integer(ri), 2 * (g - 1) + 1)? / integer(2);
    if sign_exp.rem_euclid(2) == 1 {
        scale = -scale;
    }
    Ok(scale * b_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn q(r: u32, k: u32, m: i64) -> BQuery {
        BQuery::new(r, k, m).unwrap()
    }

    #[test]
    fn base_row() {
        for r in 2..=9 {
            assert_eq!(b_direct(&q(r, 0, 0)).unwrap(), integer(i64::from(r) - 1));
            for m in 1..i64::from(r) {
                assert_eq!(b_direct(&q(r, 0, m)).unwrap(), integer(-1));
            }
        }
    }

    #[test]
    fn first_row_and_closed_form() {
        for r in 2..=9u32 {
            assert_eq!(
                b_direct(&q(r, 1, 0)).unwrap(),
                rational(i64::from(r) - 1, 2)
            );
            assert_eq!(b_recursive(&q(r, 1, 0)), rational(i64::from(r) - 1, 2));
        }
        let r = 5;
        assert_eq!(b_direct(&q(r, 2, 1)).unwrap(), integer(-2));
        assert_eq!(b2_closed_form(r, 1), integer(-2));
    }

    #[test]
    fn step_relation_has_a_minus_sign() {
        let mut t = BTable::new(7);
        for k in 1..5 {
            for m in 1..7 {
                assert_eq!(t.get(k, m), t.get(k, m - 1) - t.get(k - 1, m - 1));
            }
        }
    }

    #[test]
    fn m_is_reduced() {
        assert_eq!(q(5, 2, -1), q(5, 2, 4));
        assert_eq!(q(5, 2, 11).m(), 1);
        assert!(BQuery::new(1, 0, 0).is_err());
    }

    #[test]
    fn rank2_examples() {
        assert_eq!(m_rank2(3, 2, 2).unwrap(), integer(9));
        assert_eq!(m_rank2(6, 5, 2).unwrap(), integer(171));
        assert!(matches!(
            m_rank2(5, 3, 2),
            Err(Error::ConditionViolated { .. })
        ));
    }

    #[test]
    fn rank2_matches_general_count() {
        use crate::maxsub::{count_direct, CountQuery};
        for r in 3..=8u32 {
            for g in 2..=3i64 {
                for b in 0..i64::from(r) {
                    let Ok(v) = m_rank2(r, b, g) else { continue };
                    let q = CountQuery::new(r, i64::from(r) - b, 2, g).unwrap();
                    assert_eq!(v, count_direct(&q).unwrap(), "r={r} b={b} g={g}");
                }
            }
        }
    }

    #[test]
    fn rows_sum_to_zero() {
        let mut t = BTable::new(6);
        for k in 0..6 {
            let s: BigRational = t.row(k).iter().sum();
            assert!(s.is_zero());
        }
    }

    proptest::proptest! {
        #[test]
        fn recursion_matches_direct(r in 2u32..=9, k in 0u32..=6, m in 0i64..9) {
            let q = q(r, k, m);
            proptest::prop_assert_eq!(b_recursive(&q), b_direct(&q).unwrap());
        }

        #[test]
        fn b2_closed_form_holds(r in 3u32..=12, m0 in 0i64..12) {
            let m = 1 + m0 % (i64::from(r) - 2);
            proptest::prop_assert_eq!(b_direct(&q(r, 2, m)).unwrap(), b2_closed_form(r, m));
        }
    }
}
