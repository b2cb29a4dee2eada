use thiserror::Error;

use crate::quadratic::ArithmeticError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),

    #[error("slope {0} is rational; Sturmian words need an irrational slope")]
    RationalSlope(String),

    #[error("{what} = {value} lies outside {range}")]
    OutOfDomain { what: &'static str, value: String, range: &'static str },

    #[error("empty interval [{left}, {right})")]
    EmptyInterval { left: String, right: String },

    #[error("first-return induction exceeded the cap of {cap} steps ({pieces} pieces found so far)")]
    IterationCap { cap: usize, pieces: usize },

    #[error("index (k={k}, s={s}) out of range: need 1 <= s <= a_(k+1) = {bound}")]
    DeltaIndex { k: usize, s: u64, bound: u64 },

    #[error("{0}")]
    Infinite(InfiniteResult),

    #[error("invalid continued fraction `{input}`: {reason}")]
    ContinuedFraction { input: String, reason: String },

    #[error("continued fraction of {value} is not periodic within {limit} steps")]
    NotPeriodic { value: String, limit: usize },

    #[error("interval exchange is not a bijection of [0,1): {0}")]
    NotBijective(String),

    #[error("only {found} occurrence(s) of the abelian class of the length-{prefix} prefix in {scanned} letters")]
    InsufficientData { prefix: usize, found: usize, scanned: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Raised instead of a truncated set when the answer is infinite.
///
/// The set of abelian returns to prefixes is finite exactly when the
/// intercept is non-zero; with intercept zero every `δ` value exceeds the
/// intercept and each contributes a new return word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("infinite for zero intercept: {context} (abelian returns to prefixes are finite iff the intercept is non-zero)")]
pub struct InfiniteResult {
    pub context: &'static str,
}

impl Error {
    pub(crate) fn infinite(context: &'static str) -> Self {
        Error::Infinite(InfiniteResult { context })
    }
}
