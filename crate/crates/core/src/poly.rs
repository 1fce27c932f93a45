//! Weighted polynomials in X_1..X_k, where X_j has weight j and stands
//! for c_j of the dual universal subsheaf at a point.
//!
//! Text form (used by the CLI):
//!
//! ```text
//! poly     := term ('+' term)*
//! term     := rational | [rational '*'] factor ('*' factor)*
//! factor   := 'X' index ('^' exponent)?
//! rational := ['-'] int ('/' posint)?
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exponent vector: `exponents[j - 1]` is the multiplicity of X_j.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The class 1 over k variables.
    pub fn one(k: usize) -> Self {
        Monomial {
            exponents: vec![0; k],
        }
    }

    /// Product of X_w over the given weights, each in 1..=k.
    pub fn from_weights(k: usize, weights: &[usize]) -> Result<Self> {
        let mut m = Self::one(k);
        for &w in weights {
            if w == 0 || w > k {
                return Err(Error::IndexOutOfRange { index: w, max: k });
            }
            m.exponents[w - 1] += 1;
        }
        Ok(m)
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Multiplicity of X_j, 1-based.
    pub fn exponent(&self, j: usize) -> u32 {
        self.exponents[j - 1]
    }

    pub fn weighted_degree(&self) -> u64 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * u64::from(m))
            .sum()
    }

    /// Multiplies by X_k^b.
    pub fn times_top(&self, b: u32) -> Self {
        let mut m = self.clone();
        if let Some(last) = m.exponents.last_mut() {
            *last += b;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &m) in self.exponents.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X{}", i + 1)?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// A rational combination of distinct monomials over the same k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    terms: Vec<(BigRational, Monomial)>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial {
            k,
            terms: Vec::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(Monomial::one(k))
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial {
            k: m.k(),
            terms: vec![(BigRational::one(), m)],
        }
    }

    /// Collects like terms and drops zero coefficients. Every monomial must
    /// be over `k` variables.
    pub fn from_terms<I>(k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, Monomial)>,
    {
        let mut merged: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (c, m) in terms {
            if m.k() != k {
                return Err(Error::InvalidInput(format!(
                    "monomial {m} has {} variables, expected {k}",
                    m.k()
                )));
            }
            *merged.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        Ok(Polynomial { k, terms })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weighted degree of all terms.
    pub fn weighted_degree(&self) -> Result<u64> {
        let mut degrees = self.terms.iter().map(|(_, m)| m.weighted_degree());
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        match degrees.find(|&d| d != first) {
            Some(second) => Err(Error::NotHomogeneous { first, second }),
            None => Ok(first),
        }
    }

    /// Multiplies by X_k^b.
    pub fn times_top(&self, b: u32) -> Self {
        Polynomial {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (c.clone(), m.times_top(b)))
                .collect(),
        }
    }

    /// Parses the text form over `k` variables.
    pub fn parse(src: &str, k: usize) -> Result<Self> {
        Parser { src, pos: 0, k }.polynomial()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    k: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.src[start..self.pos])
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("{what} too large"))
        })
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err(format!("unexpected '{}'", &self.src[self.pos..=self.pos]));
        }
        Polynomial::from_terms(self.k, terms)
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one(self.k);
        if self.peek() != Some(b'X') {
            coeff = self.rational()?;
            if !self.eat(b'*') {
                return Ok((coeff, mono));
            }
        }
        loop {
            self.factor(&mut mono)?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, mono))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let negative = self.eat(b'-');
        let num: BigInt = self.digits()?.parse().expect("digits");
        let num = if negative { -num } else { num };
        if self.eat(b'/') {
            let start = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den.is_zero() {
                self.pos = start;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn factor(&mut self, mono: &mut Monomial) -> Result<()> {
        if !self.eat(b'X') {
            return self.err("expected 'X'");
        }
        let start = self.pos;
        let index = self.small("index")? as usize;
        if index == 0 || index > self.k {
            self.pos = start;
            return self.err(format!("variable index {index} outside 1..={}", self.k));
        }
        let exp = if self.eat(b'^') {
            self.small("exponent")?
        } else {
            1
        };
        mono.exponents[index - 1] += exp;
        Ok(())
    }
}
