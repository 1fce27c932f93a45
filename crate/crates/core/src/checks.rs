//! Self-checking suites over the public API, run by `maxsub selftest`.
//!
//! Every suite returns a [`SuiteReport`]; a suite never panics on a wrong
//! value, it records the failing case instead.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bkm::{b2_closed_form, b_direct, b_recursive, BQuery, BTable};
use crate::exact::integer;
use crate::maxsub::{
    closed_form_k2_g2, count, count_direct, count_via_reduction, zero_dim_condition, CountQuery,
};
use crate::poly::{Monomial, Polynomial};
use crate::schubert::classical_intersection;
use crate::twisted::{
    reduce_to_grassmannian, s_invariants, tensor_shift, twisted_invariant, GromovQuery,
};
use crate::vi::{recursion_shift, vi_sum, vi_sum_numeric};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Parameter ranges for one run.
#[derive(Debug, Clone)]
pub struct Grid {
    pub rank1_r: u32,
    pub rank1_g: Vec<i64>,
    pub rank2_r: u32,
    pub dual_r: u32,
    pub dual_g: Vec<i64>,
    pub random_queries: usize,
    pub random_r: u32,
    pub bkm_r: u32,
    pub bkm_k: u32,
    pub schubert_r: u32,
}

impl Grid {
    pub fn for_level(level: Level) -> Self {
        match level {
            Level::Quick => Grid {
                rank1_r: 4,
                rank1_g: vec![2, 3],
                rank2_r: 6,
                dual_r: 5,
                dual_g: vec![2],
                random_queries: 30,
                random_r: 6,
                bkm_r: 7,
                bkm_k: 4,
                schubert_r: 5,
            },
            Level::Full => Grid {
                rank1_r: 6,
                rank1_g: vec![2, 3, 4],
                rank2_r: 8,
                dual_r: 8,
                dual_g: vec![2, 3],
                random_queries: 200,
                random_r: 8,
                bkm_r: 12,
                bkm_k: 6,
                schubert_r: 6,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Suite {
    report: SuiteReport,
    start: Instant,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            report: SuiteReport {
                name,
                cases: 0,
                failures: Vec::new(),
                elapsed: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok {
            self.report.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        label: &str,
        got: Result<T>,
        want: &T,
    ) {
        self.report.cases += 1;
        match got {
            Ok(v) if v == *want => {}
            Ok(v) => self
                .report
                .failures
                .push(format!("{label}: got {v}, want {want}")),
            Err(e) => self.report.failures.push(format!("{label}: {e}")),
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed = self.start.elapsed();
        self.report
    }
}

/// A Grassmannian VI query together with its exact value, kept so later
/// suites can re-examine everything earlier suites evaluated.
#[derive(Debug, Clone)]
pub struct ViCase {
    pub r: u32,
    pub k: u32,
    pub g: i64,
    pub e: i64,
    pub p: Polynomial,
    pub exact: BigRational,
    /// g >= 2 and e <= e_max at the twisted level.
    pub geometric: bool,
}

fn record_count(cases: &mut Vec<ViCase>, q: &CountQuery, value: BigRational) -> Result<()> {
    let s = q.s_invariants();
    let gq = GromovQuery::new(q.r, q.k, q.g, q.d, s.e_max, Polynomial::one(q.k as usize))?;
    let (e, p) = reduce_to_grassmannian(&gq)?;
    cases.push(ViCase {
        r: q.r,
        k: q.k,
        g: q.g,
        e,
        p,
        exact: value,
        geometric: true,
    });
    Ok(())
}

/// m(r, d, 1, g) = r^g at every valid residue d mod r.
pub fn rank1_law(grid: &Grid, cases: &mut Vec<ViCase>) -> SuiteReport {
    let mut s = Suite::new("rank-1 law");
    for r in 2..=grid.rank1_r {
        for &g in &grid.rank1_g {
            for d in 0..i64::from(r) {
                if !zero_dim_condition(r, d, 1, g) {
                    continue;
                }
                let want = BigInt::from(r).pow(g as u32);
                let q = CountQuery::new(r, d, 1, g).expect("valid query");
                let got = count(&q).map(|c| c.value);
                if let Ok(v) = &got {
                    let _ = record_count(cases, &q, BigRational::from_integer(v.clone()));
                }
                s.expect_eq(&format!("m({r},{d},1,{g})"), got, &want);
            }
        }
    }
    s.finish()
}

/// Genus-2 rank-2 closed forms, b = 2 and r = 2b - 4, through both paths.
pub fn genus2_rank2(grid: &Grid, cases: &mut Vec<ViCase>) -> SuiteReport {
    let mut s = Suite::new("genus-2 rank-2 closed forms");
    for r in 3..=grid.rank2_r {
        let mut bs = vec![2];
        if r % 2 == 0 && r > 4 {
            bs.push(i64::from(r + 4) / 2);
        }
        for b in bs {
            let d = i64::from(r) - b;
            let want = closed_form_k2_g2(r, b).expect("closed form applies");
            let q = CountQuery::new(r, d, 2, 2).expect("valid query");
            let direct = count_direct(&q).and_then(|v| crate::exact::to_integer(&v));
            let reduction = count_via_reduction(&q);
            if let Ok(v) = &reduction {
                let _ = record_count(cases, &q, v.clone());
            }
            s.expect_eq(&format!("direct m({r},{d},2,2)"), direct, &want);
            s.expect_eq(
                &format!("reduction m({r},{d},2,2)"),
                reduction.and_then(|v| crate::exact::to_integer(&v)),
                &want,
            );
        }
    }
    s.finish()
}

/// B(k, m): direct sum against the recursion, vanishing row sums, and the
/// k = 2 closed form.
pub fn b_identities(grid: &Grid) -> SuiteReport {
    let mut s = Suite::new("B(k,m) identities");
    for r in 2..=grid.bkm_r {
        let mut table = BTable::new(r);
        for k in 0..=grid.bkm_k {
            let row = table.row(k).to_vec();
            let sum: BigRational = row.iter().sum();
            s.check(sum.is_zero(), || format!("row sum r={r} k={k} is {sum}"));
            for m in 0..i64::from(r) {
                let q = BQuery::new(r, k, m).expect("r >= 2");
                s.expect_eq(&format!("B({k},{m}) r={r}"), b_direct(&q), &b_recursive(&q));
                if k == 2 && 0 < m && m < i64::from(r) - 1 {
                    s.expect_eq(
                        &format!("B(2,{m}) closed form r={r}"),
                        Ok(row[m as usize].clone()),
                        &b2_closed_form(r, m),
                    );
                }
            }
        }
    }
    s.finish()
}

/// count_direct = count_via_reduction on every valid (r, d mod r, k, g).
pub fn dual_path(grid: &Grid, cases: &mut Vec<ViCase>) -> SuiteReport {
    let mut s = Suite::new("dual-path consistency");
    for r in 2..=grid.dual_r {
        for k in 1..r {
            for &g in &grid.dual_g {
                for d in 0..i64::from(r) {
                    if !zero_dim_condition(r, d, k, g) {
                        continue;
                    }
                    let q = CountQuery::new(r, d, k, g).expect("valid query");
                    let label = format!("m({r},{d},{k},{g})");
                    match (count_direct(&q), count_via_reduction(&q)) {
                        (Ok(a), Ok(b)) => {
                            s.check(a == b, || format!("{label}: direct {a} vs reduction {b}"));
                            let _ = record_count(cases, &q, b);
                        }
                        (Err(e), _) | (_, Err(e)) => s.check(false, || format!("{label}: {e}")),
                    }
                }
            }
        }
    }
    s.finish()
}

/// Weights in 1..=k summing to `total`, as a random multiset.
pub fn random_weights(rng: &mut impl Rng, k: u32, total: u32) -> Vec<u32> {
    let mut left = total;
    let mut out = Vec::new();
    while left > 0 {
        let w = rng.gen_range(1..=k.min(left));
        out.push(w);
        left -= w;
    }
    out
}

/// All weakly decreasing weight sequences in 1..=k summing to `total`.
pub fn weight_multisets(k: u32, total: u32) -> Vec<Vec<u32>> {
    fn go(max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for w in (1..=max.min(left)).rev() {
            cur.push(w);
            go(w, left - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, total, &mut Vec::new(), &mut out);
    out
}

fn monomial_of(k: u32, weights: &[u32]) -> Monomial {
    let w: Vec<usize> = weights.iter().map(|&w| w as usize).collect();
    Monomial::from_weights(k as usize, &w).expect("weights in range")
}

/// A random geometrically valid twisted query with e in {e_max - 1, e_max}
/// and a one- or two-term polynomial with small integer coefficients.
pub fn random_query(rng: &mut impl Rng, max_r: u32) -> GromovQuery {
    let r = rng.gen_range(2..=max_r);
    let k = rng.gen_range(1..r);
    let g = rng.gen_range(2..=3);
    let d = rng.gen_range(-10..=10);
    let s = s_invariants(r, k, d, g).expect("valid ranks");
    let t = rng.gen_range(0..=1);
    let degree = (s.epsilon + i64::from(r) * t) as u32;
    let terms = (0..rng.gen_range(1..=2)).map(|_| {
        let c = integer(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        (c, monomial_of(k, &random_weights(rng, k, degree)))
    });
    let mut p = Polynomial::from_terms(k as usize, terms).expect("same k");
    if p.is_zero() {
        p = Polynomial::monomial(monomial_of(k, &random_weights(rng, k, degree)));
    }
    GromovQuery::new(r, k, g, d, s.e_max - t, p).expect("valid query")
}

/// Invariance under the e-recursion and under tensoring by line bundles.
pub fn shift_invariance(grid: &Grid, seed: u64, cases: &mut Vec<ViCase>) -> SuiteReport {
    let mut s = Suite::new("recursion and tensor invariance");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..grid.random_queries {
        let q = random_query(&mut rng, grid.random_r);
        let label = format!(
            "N_{{{},{}}}({}) r={} k={} g={}",
            q.d, q.e, q.p, q.r, q.k, q.g
        );
        let v = match twisted_invariant(&q) {
            Ok(v) => v,
            Err(e) => {
                s.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        let (e0, p0) = reduce_to_grassmannian(&q).expect("evaluated above");
        cases.push(ViCase {
            r: q.r,
            k: q.k,
            g: q.g,
            e: e0,
            p: p0.clone(),
            exact: v.clone(),
            geometric: true,
        });
        let (e1, p1) = recursion_shift(e0, &p0, q.r, q.k);
        let shifted = vi_sum(q.r, q.k, q.g, e1, &p1);
        if let Ok(x) = &shifted {
            cases.push(ViCase {
                r: q.r,
                k: q.k,
                g: q.g,
                e: e1,
                p: p1,
                exact: x.clone(),
                geometric: true,
            });
        }
        s.expect_eq(&format!("{label} after recursion shift"), shifted, &v);
        let d1 = rng.gen_range(-3..=3);
        s.expect_eq(
            &format!("{label} tensored by degree {d1}"),
            twisted_invariant(&tensor_shift(&q, d1)),
            &v,
        );
    }
    s.finish()
}

/// vi_sum at g = 0, e = 0 against iterated Pieri.
pub fn schubert_oracle(grid: &Grid) -> SuiteReport {
    let mut s = Suite::new("classical oracle");
    for r in 2..=grid.schubert_r {
        for k in 1..r {
            for weights in weight_multisets(k, k * (r - k)) {
                let p = Polynomial::monomial(monomial_of(k, &weights));
                let label = format!("Gr({k},{r}) weights {weights:?}");
                match classical_intersection(r, k, &weights) {
                    Ok(want) => s.expect_eq(
                        &label,
                        vi_sum(r, k, 0, 0, &p),
                        &BigRational::from_integer(want),
                    ),
                    Err(e) => s.check(false, || format!("{label}: {e}")),
                }
            }
        }
    }
    s.finish()
}

/// |numeric - exact| <= tol (1 + |exact|), imaginary part included.
pub fn numeric_agrees(numeric: num_complex::Complex64, exact: &BigRational, tol: f64) -> bool {
    let x = exact.to_f64().unwrap_or(f64::NAN);
    let bound = tol * (1.0 + x.abs());
    (numeric.re - x).abs() <= bound && numeric.im.abs() <= bound
}

pub fn numeric_oracle(cases: &[ViCase]) -> SuiteReport {
    let mut s = Suite::new("exact vs numeric");
    for c in cases {
        let label = format!("vi_sum({},{},{},{},{})", c.r, c.k, c.g, c.e, c.p);
        match vi_sum_numeric(c.r, c.k, c.g, c.e, &c.p) {
            Ok(z) => s.check(numeric_agrees(z, &c.exact, 1e-6), || {
                format!("{label}: numeric {z} vs exact {}", c.exact)
            }),
            Err(e) => s.check(false, || format!("{label}: {e}")),
        }
    }
    s.finish()
}

pub fn integrality(cases: &[ViCase]) -> SuiteReport {
    let mut s = Suite::new("integrality");
    for c in cases.iter().filter(|c| c.geometric) {
        s.check(c.exact.is_integer(), || {
            format!(
                "vi_sum({},{},{},{},{}) = {} is not an integer",
                c.r, c.k, c.g, c.e, c.p, c.exact
            )
        });
    }
    s.finish()
}

/// Every suite in order; the numeric and integrality suites cover the
/// queries evaluated by the ones before them.
pub fn run_all(level: Level, seed: u64) -> Vec<SuiteReport> {
    let grid = Grid::for_level(level);
    let mut cases = Vec::new();
    let mut out = vec![
        rank1_law(&grid, &mut cases),
        genus2_rank2(&grid, &mut cases),
        b_identities(&grid),
        dual_path(&grid, &mut cases),
        shift_invariance(&grid, seed, &mut cases),
        schubert_oracle(&grid),
    ];
    out.push(numeric_oracle(&cases));
    out.push(integrality(&cases));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets() {
        assert_eq!(
            weight_multisets(2, 4),
            vec![vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(weight_multisets(3, 0), vec![Vec::<u32>::new()]);
        assert_eq!(weight_multisets(3, 9).len(), 12);
    }

    #[test]
    fn random_queries_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let q = random_query(&mut rng, 6);
            assert!(q.check_degree().is_ok());
            assert!(q.warnings().is_empty());
        }
    }

    #[test]
    fn numeric_tolerance() {
        use num_complex::Complex64;
        assert!(numeric_agrees(
            Complex64::new(4.0 + 1e-9, 1e-9),
            &integer(4),
            1e-6
        ));
        assert!(!numeric_agrees(Complex64::new(4.1, 0.0), &integer(4), 1e-6));
        assert!(!numeric_agrees(Complex64::new(4.0, 0.1), &integer(4), 1e-6));
    }

    #[test]
    fn quick_level_passes() {
        for report in run_all(Level::Quick, 1) {
            assert!(report.passed(), "{}: {:?}", report.name, report.failures);
            assert!(report.cases > 0, "{} ran nothing", report.name);
        }
    }
}
