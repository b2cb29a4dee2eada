//! Numeric abstractions shared by the interval-exchange machinery.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Roots;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Integer backend for exact arithmetic.
///
/// Implemented for every signed integer type that provides integer square
/// roots: `i64`, `i128` and `num_bigint::BigInt`. Fixed-width backends are
/// only safe for inputs whose coefficients stay small; the crate-root aliases
/// use `BigInt`.
pub trait IntegerRing:
    num_integer::Integer
    + Roots
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
{
}

impl<T> IntegerRing for T where
    T: num_integer::Integer
        + Roots
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
{
}

/// An exactly ordered field in which interval exchanges can be evaluated.
///
/// Comparisons are exact; there is no tolerance anywhere in the interval
/// code. Arithmetic operators panic on domain errors (division by zero,
/// incompatible radicands), mirroring the integer and `Ratio` operators.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Int: IntegerRing;

    fn from_int(n: Self::Int) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(<Self::Int as FromPrimitive>::from_i64(n).expect("i64 fits the backend"))
    }

    fn is_rational(&self) -> bool;

    /// Greatest integer not exceeding `self`.
    fn floor(&self) -> Self::Int;

    /// Decimal approximation for display only.
    fn approx(&self) -> f64;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}
