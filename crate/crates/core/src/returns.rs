//! Abelian returns to prefixes, computed from the slope's continued fraction.
//!
//! The returns to light prefixes are the `[0, δ)`-itineraries of `T` for the
//! values `δ ≥ δ_{k₀,s₀}`, where `(k₀, s₀)` is the first index with
//! `δ_{k₀,s₀} ≤ ρ`. Passing from one `δ` to the next keeps one word of the
//! current pair `R ≺ R′` and replaces the other by `RR′`; which one is kept
//! depends only on the first partial quotient of the renormalized slope.
//! Heavy prefixes are handled through the letter exchange `E`, which maps
//! `(α, ρ)` to `(1−α, 1−ρ)`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::continued_fraction::ContinuedFraction;
use crate::delta::{minimal_indices, DeltaStream, DeltaValue};
use crate::error::{Error, Result};
use crate::iet::IntervalExchange;
use crate::scalar::Scalar;
use crate::slope::Slope;
use crate::word::{shortlex, BinaryWord};
use crate::FieldElement;

/// Knobs for the renormalization loop.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlgorithmOptions {
    /// Negative control for the verification harness: orders the new pair
    /// with `1 < 0`.
    #[doc(hidden)]
    pub flip_lex: bool,
}

/// One row of the renormalization loop: the itineraries of `[0, δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgorithmStep {
    pub delta: DeltaValue,
    pub r: BinaryWord,
    pub r_prime: BinaryWord,
    pub product: BinaryWord,
    /// Slope of the first-return map to `[0, δ)`, rescaled to `[0, 1)`.
    #[serde(serialize_with = "crate::serialize_display")]
    pub epsilon: ContinuedFraction,
}

/// The loop as an iterator over its rows, starting at `δ₀ = 1`.
#[derive(Clone, Debug)]
pub struct ReturnAlgorithm {
    deltas: DeltaStream,
    epsilon: ContinuedFraction,
    r: BinaryWord,
    r_prime: BinaryWord,
    options: AlgorithmOptions,
}

impl ReturnAlgorithm {
    pub fn new(slope: &Slope) -> Self {
        Self::with_options(slope, AlgorithmOptions::default())
    }

    pub fn with_options(slope: &Slope, options: AlgorithmOptions) -> Self {
        ReturnAlgorithm {
            deltas: DeltaStream::new(slope),
            epsilon: slope.cf().clone(),
            r: BinaryWord::letter(0),
            r_prime: BinaryWord::letter(1),
            options,
        }
    }
}

impl Iterator for ReturnAlgorithm {
    type Item = AlgorithmStep;

    fn next(&mut self) -> Option<AlgorithmStep> {
        let delta = self.deltas.next()?;
        let product = self.r.concat(&self.r_prime);
        let step = AlgorithmStep {
            delta,
            r: self.r.clone(),
            r_prime: self.r_prime.clone(),
            product: product.clone(),
            epsilon: self.epsilon.clone(),
        };
        if self.epsilon.exceeds_half() {
            self.r_prime = product;
        } else {
            let product_first = (product < self.r_prime) != self.options.flip_lex;
            let kept = std::mem::replace(&mut self.r_prime, BinaryWord::empty());
            (self.r, self.r_prime) = if product_first { (product, kept) } else { (kept, product) };
        }
        self.epsilon = self.epsilon.renormalize().expect("irrational slopes renormalize");
        Some(step)
    }
}

/// The first `rows` rows of the loop.
pub fn algorithm_trace(slope: &Slope, rows: usize) -> Vec<AlgorithmStep> {
    ReturnAlgorithm::new(slope).take(rows).collect()
}

/// Abelian returns to the light prefixes, with the index `(k₀, s₀)`.
pub fn r_set(slope: &Slope, rho: &FieldElement) -> Result<(BTreeSet<BinaryWord>, DeltaValue)> {
    r_set_with(slope, rho, AlgorithmOptions::default())
}

pub fn r_set_with(
    slope: &Slope,
    rho: &FieldElement,
    options: AlgorithmOptions,
) -> Result<(BTreeSet<BinaryWord>, DeltaValue)> {
    let first = minimal_indices(slope, rho)?;
    // Row 0 contributes {0, 1}; each further δ above ρ contributes one RR′.
    let mut words: BTreeSet<BinaryWord> = [BinaryWord::letter(0), BinaryWord::letter(1)].into();
    words.extend(ReturnAlgorithm::with_options(slope, options).take(first.flat_index).map(|step| step.product));
    Ok((words, first))
}

/// Abelian returns to the heavy prefixes: `E` of the light returns of the
/// exchanged word.
pub fn r_prime_set(slope: &Slope, rho: &FieldElement) -> Result<(BTreeSet<BinaryWord>, DeltaValue)> {
    r_prime_set_with(slope, rho, AlgorithmOptions::default())
}

pub fn r_prime_set_with(
    slope: &Slope,
    rho: &FieldElement,
    options: AlgorithmOptions,
) -> Result<(BTreeSet<BinaryWord>, DeltaValue)> {
    slope.check_intercept(rho)?;
    if rho.is_zero() {
        return Err(Error::infinite("the exchanged word has intercept 1"));
    }
    let one = FieldElement::from_i64(1);
    let (words, first) = r_set_with(&slope.complement(), &(one - rho.clone()), options)?;
    Ok((words.iter().map(BinaryWord::exchange).collect(), first))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub n_r: usize,
    pub n_rprime: usize,
    pub n_apr: usize,
}

/// Both halves of the set of abelian returns to prefixes and their union,
/// each listed by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnSetResult {
    pub r_set: Vec<BinaryWord>,
    pub r_prime_set: Vec<BinaryWord>,
    pub apr: Vec<BinaryWord>,
    pub counts: Counts,
    /// `(k₀, s₀)` for `ρ` and slope `α`.
    pub indices: DeltaValue,
    /// `(k₀, s₀)` for `1−ρ` and slope `1−α`.
    pub indices_prime: DeltaValue,
}

pub fn apr_set(slope: &Slope, rho: &FieldElement) -> Result<ReturnSetResult> {
    apr_set_with(slope, rho, AlgorithmOptions::default())
}

pub fn apr_set_with(slope: &Slope, rho: &FieldElement, options: AlgorithmOptions) -> Result<ReturnSetResult> {
    let (light, indices) = r_set_with(slope, rho, options)?;
    let (heavy, indices_prime) = r_prime_set_with(slope, rho, options)?;
    let union: BTreeSet<BinaryWord> = light.union(&heavy).cloned().collect();
    let result = ReturnSetResult {
        counts: Counts { n_r: light.len(), n_rprime: heavy.len(), n_apr: union.len() },
        r_set: shortlex(&light),
        r_prime_set: shortlex(&heavy),
        apr: shortlex(&union),
        indices,
        indices_prime,
    };
    check_return_set(&result, &light, &heavy)?;
    Ok(result)
}

fn check_return_set(result: &ReturnSetResult, light: &BTreeSet<BinaryWord>, heavy: &BTreeSet<BinaryWord>) -> Result<()> {
    let letters: BTreeSet<BinaryWord> = [BinaryWord::letter(0), BinaryWord::letter(1)].into();
    let common: BTreeSet<BinaryWord> = light.intersection(heavy).cloned().collect();
    if common != letters {
        return Err(Error::Invariant(format!("light and heavy returns share {:?}", shortlex(&common))));
    }
    for w in ["0", "1", "01", "10"] {
        if !result.apr.iter().any(|x| x.to_string() == w) {
            return Err(Error::Invariant(format!("{w} missing from the returns to prefixes")));
        }
    }
    let expected = result.indices.flat_index + 2;
    if result.counts.n_r != expected {
        return Err(Error::Invariant(format!("{} light returns, expected {expected}", result.counts.n_r)));
    }
    Ok(())
}

/// Which branch of the closed-form count applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CardinalityCase {
    /// `α < ρ < 1−α`, `ρ < 1 − (a₁−l+1)α`: count `a₁ + 4`.
    #[serde(rename = "i(a)")]
    MiddleLow,
    /// `α < ρ < 1−α`, `ρ ≥ 1 − (a₁−l+1)α`: count `a₁ + 3`.
    #[serde(rename = "i(b)")]
    MiddleHigh,
    /// `ρ ∉ (α, 1−α)`: count `2 + a₁ + … + a_k + s`.
    #[serde(rename = "ii")]
    Outer,
}

impl fmt::Display for CardinalityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CardinalityCase::MiddleLow => "i(a)",
            CardinalityCase::MiddleHigh => "i(b)",
            CardinalityCase::Outer => "ii",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cardinality {
    pub count: usize,
    pub case: CardinalityCase,
    /// The count was evaluated for `(1−α, 1−ρ)` because `α > 1/2`.
    pub mirrored: bool,
    /// `l` with `(l−1)α < ρ ≤ lα` in the middle band.
    pub l: Option<u64>,
    /// `(k, s)` for `min{ρ, 1−ρ}` outside the middle band.
    pub indices: Option<DeltaValue>,
}

/// Number of abelian returns to prefixes, from the closed-form count.
pub fn apr_cardinality(slope: &Slope, rho: &FieldElement) -> Result<Cardinality> {
    slope.check_intercept(rho)?;
    if rho.is_zero() {
        return Err(Error::infinite("the cardinality formulas need a non-zero intercept"));
    }
    let one = FieldElement::from_i64(1);
    let mirrored = slope.exceeds_half();
    let (slope, rho) = if mirrored {
        (slope.complement(), one.clone() - rho.clone())
    } else {
        (slope.clone(), rho.clone())
    };
    let a1 = slope.a(1);
    let alpha = slope.value().clone();
    let one_minus_alpha = one.clone() - alpha.clone();
    if alpha < rho && rho < one_minus_alpha {
        let l = (2..=a1)
            .find(|&l| {
                let l = FieldElement::from_i64(l as i64);
                (l.clone() - one.clone()) * alpha.clone() < rho && rho <= l * alpha.clone()
            })
            .ok_or_else(|| Error::Invariant(format!("no l for rho = {rho} in the middle band")))?;
        let threshold = one - FieldElement::from_i64((a1 - l + 1) as i64) * alpha;
        let (case, count) = if rho < threshold {
            (CardinalityCase::MiddleLow, a1 + 4)
        } else {
            (CardinalityCase::MiddleHigh, a1 + 3)
        };
        return Ok(Cardinality { count: count as usize, case, mirrored, l: Some(l), indices: None });
    }
    let nearest = std::cmp::min(rho.clone(), one - rho);
    let indices = minimal_indices(&slope, &nearest)?;
    Ok(Cardinality {
        count: indices.flat_index + 3,
        case: CardinalityCase::Outer,
        mirrored,
        l: None,
        indices: Some(indices),
    })
}

/// Abelian returns to prefixes of the characteristic word (`ρ = 1−α`).
pub fn characteristic_apr(slope: &Slope) -> Vec<BinaryWord> {
    // x, y, xy and y^j x for j = 1..=run
    let (x, y, run) = if slope.exceeds_half() { (1, 0, slope.a(2) + 1) } else { (0, 1, slope.a(1)) };
    let mut words: BTreeSet<BinaryWord> = [BinaryWord::letter(x), BinaryWord::letter(y)].into();
    words.insert(BinaryWord::from_bits([x, y]));
    for j in 1..=run as usize {
        words.insert(BinaryWord::from_bits(std::iter::repeat_n(y, j).chain([x])));
    }
    shortlex(&words)
}

/// Light prefixes have the larger number of zeros among factors of their length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Light,
    Heavy,
}

/// The prefix of length `n` is light iff `ρ < T^{−n+1}(α)`.
pub fn light_or_heavy<S: Scalar>(alpha: &S, rho: &S, n: usize) -> Result<Weight> {
    let t = IntervalExchange::two_interval(alpha.clone())?;
    t.apply(rho)?;
    let boundary = t.inverse_iterate_alpha(n)?;
    Ok(if *rho < boundary { Weight::Light } else { Weight::Heavy })
}
