use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements of Q(zeta_{left}) and Q(zeta_{right}) cannot be combined")]
    OrderMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("cyclotomic value is not rational: {0}")]
    NotRational(String),

    #[error("polynomial is not weighted-homogeneous (degrees {first} and {second})")]
    NotHomogeneous { first: u64, second: u64 },

    #[error("zero polynomial has no weighted degree")]
    ZeroPolynomial,

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("degree mismatch: polynomial has weighted degree {actual}, required {expected}")]
    DegreeMismatch { expected: i64, actual: i64 },

    #[error("invalid rank: need 1 <= k < r, got k={k}, r={r}")]
    InvalidRank { r: u32, k: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "zero-dimensionality condition fails: k(r-k)(g-1) = {lhs} is not congruent to k*d = {rhs} mod {r} (epsilon = {epsilon})"
    )]
    ConditionViolated {
        r: u32,
        lhs: i64,
        rhs: i64,
        epsilon: i64,
    },

    #[error("sign exponent {numerator}/{denominator} is not an integer")]
    NonIntegralSignExponent { numerator: i64, denominator: i64 },

    #[error("evaluation paths disagree: {0}")]
    PathMismatch(String),

    #[error("expected an integer, got {0}")]
    NonIntegral(String),

    #[error("closed form not applicable: {0}")]
    NotApplicable(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotRational(_)
                | Error::PathMismatch(_)
                | Error::NonIntegral(_)
                | Error::NonIntegralSignExponent { .. }
        )
    }
}
