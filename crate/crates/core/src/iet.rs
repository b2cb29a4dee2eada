//! Two- and three-interval exchanges and the coding of their orbits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::BinaryWord;

/// Order in which the translated intervals appear in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Permutation {
    /// Two intervals, images in reverse order.
    Swap2,
    /// Three intervals, images in reverse order.
    Perm321,
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Permutation::Swap2 => write!(f, "(21)"),
            Permutation::Perm321 => write!(f, "(321)"),
        }
    }
}

/// A piecewise translation of `[0, 1)` exchanging 2 or 3 left-closed,
/// right-open intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalExchange<S> {
    breakpoints: Vec<S>,
    translations: Vec<S>,
    permutation: Permutation,
}

impl<S: Scalar> IntervalExchange<S> {
    /// Validates that the pieces `[0,b₁), [b₁,b₂), …` translated by
    /// `translations` tile `[0, 1)` again.
    pub fn new(breakpoints: Vec<S>, translations: Vec<S>) -> Result<Self> {
        let n = translations.len();
        if breakpoints.len() + 1 != n || !(2..=3).contains(&n) {
            return Err(Error::NotBijective(format!(
                "{} breakpoints for {} translations",
                breakpoints.len(),
                n
            )));
        }
        let mut ends = vec![S::zero()];
        ends.extend(breakpoints.iter().cloned());
        ends.push(S::one());
        if ends.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotBijective("breakpoints must increase strictly inside (0,1)".into()));
        }
        let mut images: Vec<(S, S, usize)> = (0..n)
            .map(|i| (ends[i].clone() + translations[i].clone(), ends[i + 1].clone() + translations[i].clone(), i))
            .collect();
        images.sort_by(|x, y| x.0.cmp(&y.0));
        let mut cursor = S::zero();
        for (l, r, _) in &images {
            if *l != cursor {
                return Err(Error::NotBijective(format!("images leave a gap or overlap at {cursor}")));
            }
            cursor = r.clone();
        }
        if cursor != S::one() {
            return Err(Error::NotBijective(format!("images end at {cursor}, not 1")));
        }
        let order: Vec<usize> = images.iter().map(|x| x.2).collect();
        let permutation = match order.as_slice() {
            [1, 0] => Permutation::Swap2,
            [2, 1, 0] => Permutation::Perm321,
            other => return Err(Error::NotBijective(format!("unsupported image order {other:?}"))),
        };
        Ok(IntervalExchange { breakpoints, translations, permutation })
    }

    /// The Sturmian exchange: `x + 1 − α` on `[0, α)` and `x − α` on `[α, 1)`.
    pub fn two_interval(alpha: S) -> Result<Self> {
        if alpha <= S::zero() || alpha >= S::one() {
            return Err(Error::OutOfDomain { what: "alpha", value: alpha.to_string(), range: "(0,1)" });
        }
        if alpha.is_rational() {
            return Err(Error::RationalSlope(alpha.to_string()));
        }
        let translations = vec![S::one() - alpha.clone(), -alpha.clone()];
        Self::new(vec![alpha], translations)
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn translations(&self) -> &[S] {
        &self.translations
    }

    pub fn permutation(&self) -> Permutation {
        self.permutation
    }

    pub fn interval_count(&self) -> usize {
        self.translations.len()
    }

    /// `[left, right)` of the `i`-th exchanged interval.
    pub fn interval(&self, i: usize) -> (S, S) {
        let left = if i == 0 { S::zero() } else { self.breakpoints[i - 1].clone() };
        let right = self.breakpoints.get(i).cloned().unwrap_or_else(S::one);
        (left, right)
    }

    fn check_domain(x: &S) -> Result<()> {
        if x.is_negative() || *x >= S::one() {
            return Err(Error::OutOfDomain { what: "x", value: x.to_string(), range: "[0,1)" });
        }
        Ok(())
    }

    /// Index of the interval containing `x`; `x` must lie in `[0, 1)`.
    pub fn interval_index(&self, x: &S) -> usize {
        self.breakpoints.iter().take_while(|b| *b <= x).count()
    }

    pub fn apply(&self, x: &S) -> Result<S> {
        Self::check_domain(x)?;
        Ok(x.clone() + self.translations[self.interval_index(x)].clone())
    }

    pub fn apply_inverse(&self, y: &S) -> Result<S> {
        Self::check_domain(y)?;
        for i in 0..self.interval_count() {
            let (l, r) = self.interval(i);
            let t = &self.translations[i];
            let pre = y.clone() - t.clone();
            if l <= pre && pre < r {
                return Ok(pre);
            }
        }
        unreachable!("validated exchanges are bijective")
    }

    /// `T^{-(n-1)}(α)` for the first breakpoint `α`, the boundary between
    /// light and heavy prefix cylinders of length `n`.
    pub fn inverse_iterate_alpha(&self, n: usize) -> Result<S> {
        assert!(n >= 1, "prefix lengths start at 1");
        let mut x = self.breakpoints[0].clone();
        for _ in 1..n {
            x = self.apply_inverse(&x)?;
        }
        Ok(x)
    }
}

/// Prefix of length `n` of the Sturmian word with slope `alpha` and
/// intercept `rho`: letter `j` is 0 iff `T^j(ρ) ∈ [0, α)`.
pub fn code_orbit<S: Scalar>(alpha: &S, rho: &S, n: usize) -> Result<BinaryWord> {
    let t = IntervalExchange::two_interval(alpha.clone())?;
    IntervalExchange::<S>::check_domain(rho)?;
    let (up, down) = (t.translations[0].clone(), t.translations[1].clone());
    let mut x = rho.clone();
    let mut bits = Vec::with_capacity(n);
    for _ in 0..n {
        if x < *alpha {
            bits.push(0);
            x = x + up.clone();
        } else {
            bits.push(1);
            x = x + down.clone();
        }
    }
    Ok(BinaryWord::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldElement;

    fn q(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    fn inv_tau() -> FieldElement {
        q("(-1+sqrt(5))/2")
    }

    #[test]
    fn golden_exchange() {
        let t = IntervalExchange::two_interval(inv_tau()).unwrap();
        assert_eq!(t.breakpoints(), &[inv_tau()]);
        assert_eq!(t.translations(), &[q("1") - inv_tau(), -inv_tau()]);
        assert_eq!(t.permutation(), Permutation::Swap2);
    }

    #[test]
    fn silver_exchange() {
        let t = IntervalExchange::two_interval(q("sqrt(2)-1")).unwrap();
        assert_eq!(t.translations(), &[q("2-sqrt(2)"), q("1-sqrt(2)")]);
    }

    #[test]
    fn rational_slope_rejected() {
        assert!(matches!(IntervalExchange::two_interval(q("1/2")), Err(Error::RationalSlope(_))));
        assert!(IntervalExchange::two_interval(q("3/2") + inv_tau()).is_err());
    }

    #[test]
    fn apply_examples() {
        let t = IntervalExchange::two_interval(inv_tau()).unwrap();
        let inv_tau2 = &inv_tau() * &inv_tau();
        assert_eq!(t.apply(&q("0")).unwrap(), inv_tau2);
        assert_eq!(t.apply(&inv_tau()).unwrap(), q("0"));
        let inv_tau3 = &inv_tau2 * &inv_tau();
        assert_eq!(t.apply_inverse(&inv_tau()).unwrap(), inv_tau3.clone());
        assert_eq!(inv_tau3, q("2") * inv_tau() - q("1"));
        assert!(t.apply(&q("1")).is_err());
        assert!(t.apply(&q("-1/3")).is_err());
    }

    #[test]
    fn inverse_iterates_of_alpha() {
        let t = IntervalExchange::two_interval(inv_tau()).unwrap();
        let inv_tau3 = q("2") * inv_tau() - q("1");
        assert_eq!(t.inverse_iterate_alpha(1).unwrap(), inv_tau());
        assert_eq!(t.inverse_iterate_alpha(2).unwrap(), inv_tau3.clone());
        let third = t.inverse_iterate_alpha(3).unwrap();
        assert_eq!(third, inv_tau3 + inv_tau());
        assert!(third < q("1") && third > q("0"));
        assert!((third.to_f64() - 0.854_101_966_249_684_5).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_coding() {
        let a = inv_tau();
        let rho = q("1") - a.clone();
        assert_eq!(code_orbit(&a, &rho, 10).unwrap().to_string(), "0100101001");
        assert_eq!(code_orbit(&a, &q("0"), 1).unwrap().to_string(), "0");
        assert_eq!(code_orbit(&a, &a, 3).unwrap().to_string(), "100");
    }

    #[test]
    fn three_interval_exchange_validation() {
        // Reversal of lengths 1/5, 1/3, 7/15 in ℚ(√5)'s rational subfield.
        let t = IntervalExchange::new(
            vec![q("1/5"), q("8/15")],
            vec![q("4/5"), q("4/15"), q("-8/15")],
        )
        .unwrap();
        assert_eq!(t.permutation(), Permutation::Perm321);
        let x = q("1/4");
        assert_eq!(t.apply_inverse(&t.apply(&x).unwrap()).unwrap(), x);
        assert!(IntervalExchange::new(vec![q("1/2")], vec![q("1/2"), q("-1/3")]).is_err());
        assert!(IntervalExchange::new(vec![q("1/2")], vec![q("0"), q("0")]).is_err());
    }
}
