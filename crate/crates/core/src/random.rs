//! Seeded random slopes and intercepts for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continued_fraction::ContinuedFraction;
use crate::returns::CardinalityCase;
use crate::scalar::Scalar;
use crate::slope::Slope;
use crate::FieldElement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for random continued fractions.
#[derive(Clone, Copy, Debug)]
pub struct SlopeShape {
    pub max_preperiod: usize,
    pub max_period: usize,
    pub max_digit: u64,
}

impl Default for SlopeShape {
    fn default() -> Self {
        SlopeShape { max_preperiod: 3, max_period: 3, max_digit: 5 }
    }
}

pub fn random_cf<R: Rng>(rng: &mut R, shape: SlopeShape) -> ContinuedFraction {
    let pre = rng.gen_range(0..=shape.max_preperiod);
    let per = rng.gen_range(1..=shape.max_period);
    let mut digit = || rng.gen_range(1..=shape.max_digit);
    let preperiod: Vec<u64> = (0..pre).map(|_| digit()).collect();
    let period: Vec<u64> = (0..per).map(|_| digit()).collect();
    ContinuedFraction::new(preperiod, period).expect("positive digits")
}

pub fn random_slope<R: Rng>(rng: &mut R, shape: SlopeShape) -> Slope {
    Slope::from_cf(random_cf(rng, shape)).expect("non-empty period")
}

fn ratio(p: i64, q: i64) -> FieldElement {
    FieldElement::from_i64(p) / FieldElement::from_i64(q)
}

/// A uniformly chosen point of `(lo, hi)` of the form `lo + (hi−lo)·p/q`.
fn between<R: Rng>(rng: &mut R, lo: &FieldElement, hi: &FieldElement) -> FieldElement {
    let q = rng.gen_range(2..=24);
    let p = rng.gen_range(1..q);
    lo.clone() + (hi.clone() - lo.clone()) * ratio(p, q)
}

/// Random non-zero intercept in `(lo, hi) ⊆ (0, 1)` from the slope's field:
/// a rational, a rational multiple of `α`, or a rational shift of `α`.
pub fn random_intercept<R: Rng>(rng: &mut R, slope: &Slope, lo: &FieldElement, hi: &FieldElement) -> FieldElement {
    let one = FieldElement::from_i64(1);
    let alpha = slope.value().clone();
    for _ in 0..64 {
        let q = rng.gen_range(2..=40);
        let p = rng.gen_range(1..q);
        let candidate = match rng.gen_range(0..3) {
            0 => ratio(p, q),
            1 => alpha.clone() * ratio(p, q),
            _ => {
                let x = alpha.clone() + ratio(p, q);
                if x >= one { x - one.clone() } else { x }
            }
        };
        if candidate > *lo && candidate < *hi {
            return candidate;
        }
    }
    between(rng, lo, hi)
}

/// An intercept landing in the requested branch of the closed-form count, or
/// `None` when the branch is empty (`a₁+3` needs `a₁ ≥ 3`).
///
/// The branches are described for `α < 1/2`; for `α > 1/2` the intercept is
/// chosen for `(1−α, ·)` and reflected.
pub fn intercept_for_case<R: Rng>(rng: &mut R, slope: &Slope, case: CardinalityCase) -> Option<FieldElement> {
    let one = FieldElement::from_i64(1);
    let mirrored = slope.exceeds_half();
    let small = if mirrored { slope.complement() } else { slope.clone() };
    let alpha = small.value().clone();
    let a1 = small.a(1) as i64;
    let k = |n: i64| FieldElement::from_i64(n);
    let rho = match case {
        CardinalityCase::Outer => {
            // ρ ≤ α or ρ ≥ 1−α, band edges included
            let edge = [alpha.clone(), one.clone() - alpha.clone()];
            match rng.gen_range(0..4) {
                0 => edge.choose(rng).unwrap().clone(),
                1 => between(rng, &k(0), &alpha),
                2 => random_intercept(rng, &small, &k(0), &alpha),
                _ => between(rng, &(one.clone() - alpha.clone()), &one),
            }
        }
        CardinalityCase::MiddleHigh if a1 < 3 => return None,
        CardinalityCase::MiddleLow | CardinalityCase::MiddleHigh => {
            // For l = a₁ the upper sub-band [1 − α, a₁α] misses (α, 1−α).
            let top = if case == CardinalityCase::MiddleLow { a1 } else { a1 - 1 };
            let l = rng.gen_range(2..=top);
            let low = (k(l) - k(1)) * alpha.clone();
            let cut = one.clone() - k(a1 - l + 1) * alpha.clone();
            let high = k(l) * alpha.clone();
            // Keep inside (α, 1−α).
            let floor = std::cmp::max(low, alpha.clone());
            let ceiling = std::cmp::min(high.clone(), one.clone() - alpha.clone());
            if case == CardinalityCase::MiddleLow {
                between(rng, &floor, &std::cmp::min(cut, ceiling))
            } else if rng.gen_bool(0.2) && cut > floor {
                cut
            } else {
                between(rng, &std::cmp::max(cut, floor), &ceiling)
            }
        }
    };
    Some(if mirrored { one - rho } else { rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::returns::apr_cardinality;

    #[test]
    fn same_seed_same_inputs() {
        let shape = SlopeShape::default();
        let draw = |seed| {
            let mut r = rng(seed);
            (0..5).map(|_| random_cf(&mut r, shape).to_string()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn targeted_intercepts_hit_their_case() {
        let mut r = rng(11);
        let cases = [CardinalityCase::MiddleLow, CardinalityCase::MiddleHigh, CardinalityCase::Outer];
        let mut tried = 0;
        while tried < 60 {
            let slope = random_slope(&mut r, SlopeShape::default());
            for case in cases {
                let Some(rho) = intercept_for_case(&mut r, &slope, case) else {
                    continue;
                };
                assert_eq!(apr_cardinality(&slope, &rho).unwrap().case, case, "{slope} rho={rho}");
                tried += 1;
            }
        }
    }
}
