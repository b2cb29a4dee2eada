//! Irrational slopes carried as both a continued fraction and an exact value.

use std::fmt;
use std::str::FromStr;

use crate::continued_fraction::ContinuedFraction;
use crate::error::{Error, Result};
use crate::quadratic::ArithmeticError;
use crate::scalar::Scalar;
use crate::FieldElement;

/// An irrational slope `α ∈ (0,1)`. The continued fraction drives the
/// combinatorics, the field value drives the interval arithmetic; both always
/// describe the same number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    cf: ContinuedFraction,
    value: FieldElement,
}

impl Slope {
    pub fn from_cf(cf: ContinuedFraction) -> Result<Self> {
        if !cf.is_irrational() {
            return Err(Error::RationalSlope(cf.to_string()));
        }
        let value = cf.value()?;
        Ok(Slope { cf, value })
    }

    pub fn from_value(value: FieldElement) -> Result<Self> {
        if value.is_rational() {
            return Err(Error::RationalSlope(value.to_string()));
        }
        let cf = ContinuedFraction::from_value(&value)?;
        Ok(Slope { cf, value })
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }

    /// Partial quotient `a_i`, `i ≥ 1`.
    pub fn a(&self, i: usize) -> u64 {
        self.cf.digit(i).expect("irrational expansions are infinite")
    }

    /// The slope `1 − α` of the letter-exchanged word.
    pub fn complement(&self) -> Slope {
        let cf = self.cf.complement().expect("irrational");
        Slope { cf, value: FieldElement::from_i64(1) - self.value.clone() }
    }

    /// The slope of the first-return map to `[0, max{α, 1−α})`.
    pub fn renormalize(&self) -> Slope {
        Slope::from_cf(self.cf.renormalize().expect("irrational")).expect("irrational")
    }

    pub fn exceeds_half(&self) -> bool {
        self.cf.exceeds_half()
    }

    /// Rejects intercepts outside `[0, 1)` or in a different quadratic field.
    pub fn check_intercept(&self, rho: &FieldElement) -> Result<()> {
        if !rho.is_rational() && rho.radicand() != self.value.radicand() {
            return Err(ArithmeticError::IncompatibleRadicands {
                left: self.value.radicand().to_string(),
                right: rho.radicand().to_string(),
            }
            .into());
        }
        if rho.is_negative() || *rho >= FieldElement::from_i64(1) {
            return Err(Error::OutOfDomain { what: "rho", value: rho.to_string(), range: "[0,1)" });
        }
        Ok(())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cf)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts a continued fraction `[0;…,(…)]` or an exact field element.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            Slope::from_cf(s.parse()?)
        } else {
            let value: FieldElement = s.parse()?;
            Slope::from_value(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_input_forms_agree() {
        let a: Slope = "[0;(1)]".parse().unwrap();
        let b: Slope = "(-1+sqrt(5))/2".parse().unwrap();
        assert_eq!(a, b);
        assert!(a.exceeds_half());
        assert_eq!(a.complement().cf().to_string(), "[0;2,(1)]");
        assert_eq!(a.complement().value().to_string(), "(3-sqrt(5))/2");
    }

    #[test]
    fn rational_inputs_are_rejected() {
        assert!(matches!("[0;3,2]".parse::<Slope>(), Err(Error::RationalSlope(_))));
        assert!(matches!("2/7".parse::<Slope>(), Err(Error::RationalSlope(_))));
    }

    #[test]
    fn intercepts_must_share_the_field() {
        let a: Slope = "[0;(1)]".parse().unwrap();
        assert!(a.check_intercept(&"1/3".parse().unwrap()).is_ok());
        assert!(a.check_intercept(&"(3-sqrt(5))/2".parse().unwrap()).is_ok());
        assert!(matches!(a.check_intercept(&"sqrt(2)-1".parse().unwrap()), Err(Error::Arithmetic(_))));
        assert!(matches!(a.check_intercept(&"1".parse().unwrap()), Err(Error::OutOfDomain { .. })));
    }
}
