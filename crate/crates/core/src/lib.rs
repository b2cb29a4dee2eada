//! Exact enumeration of abelian returns to prefixes of Sturmian words.
//!
//! A Sturmian word with slope `α` and intercept `ρ` codes the orbit of `ρ`
//! under the two-interval exchange `T(x) = x + 1 − α` on `[0, α)`,
//! `T(x) = x − α` on `[α, 1)`. Everything here is exact: slopes are quadratic
//! irrationals given by eventually periodic continued fractions, intercepts
//! live in the same quadratic field, and every comparison is decided with
//! integer arithmetic.
//!
//! The interval machinery ([`iet`], [`induction`]) is generic over a
//! [`Scalar`]; [`Quadratic`] is generic over its integer backend. The crate
//! root fixes the big-integer instances as [`FieldElement`] and friends.

pub mod continued_fraction;
pub mod delta;
pub mod error;
pub mod iet;
pub mod oracle;
pub mod induction;
pub mod quadratic;
pub mod random;
pub mod returns;
pub mod scalar;
pub mod slope;
pub mod verify;
pub mod word;

pub use continued_fraction::{ContinuedFraction, Convergents, Expansion};
pub use delta::{delta, delta_table, minimal_indices, DeltaStream, DeltaValue};
pub use error::{Error, InfiniteResult, Result};
pub use iet::{code_orbit, IntervalExchange, Permutation};
pub use induction::{induce, itineraries_zero_beta, InductionResult, Piece, ZeroBetaItineraries};
pub use quadratic::{ArithmeticError, Quadratic};
pub use returns::{
    algorithm_trace, apr_cardinality, apr_set, characteristic_apr, light_or_heavy, r_prime_set, r_set,
    AlgorithmStep, Cardinality, CardinalityCase, ReturnAlgorithm, ReturnSetResult, Weight,
};
pub use scalar::{IntegerRing, Scalar};
pub use slope::Slope;
pub use word::BinaryWord;

pub use num_bigint::BigInt;

/// Exact element of `ℚ(√d)` with arbitrary-precision coefficients.
pub type FieldElement = Quadratic<BigInt>;

/// Convergents with arbitrary-precision entries.
pub type BigConvergents = Convergents<BigInt>;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
