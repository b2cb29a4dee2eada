//! The three-gap lengths `δ_{k,s}` of a slope.
//!
//! `δ_{k,s} = |(s−1)(p_k − α q_k) + p_{k−1} − α q_{k−1}|` for `k ≥ 0` and
//! `1 ≤ s ≤ a_{k+1}`. Ordering the pairs `(k, s)` lexicographically gives a
//! strictly decreasing sequence `δ₀ = 1 > δ₁ = max{α, 1−α} > …`; the position
//! in that sequence is the flat index.

use num_traits::Zero;
use serde::Serialize;

use crate::continued_fraction::Convergents;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::slope::Slope;
use crate::{BigInt, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaValue {
    pub k: usize,
    pub s: u64,
    #[serde(serialize_with = "crate::serialize_display")]
    pub value: FieldElement,
    pub flat_index: usize,
}

fn delta_value(alpha: &FieldElement, conv: &Convergents<BigInt>, k: usize, s: u64) -> FieldElement {
    let k = k as isize;
    let big = |x: &BigInt| FieldElement::from_int(x.clone());
    let head = big(conv.p(k)) - alpha.clone() * big(conv.q(k));
    let tail = big(conv.p(k - 1)) - alpha.clone() * big(conv.q(k - 1));
    (FieldElement::from_i64(s as i64 - 1) * head + tail).abs()
}

/// `δ_{k,s}` for `1 ≤ s ≤ a_{k+1}`.
pub fn delta(slope: &Slope, k: usize, s: u64) -> Result<DeltaValue> {
    let bound = slope.a(k + 1);
    if s == 0 || s > bound {
        return Err(Error::DeltaIndex { k, s, bound });
    }
    let conv = Convergents::of(slope.cf(), k);
    let flat_index = (1..=k).map(|i| slope.a(i) as usize).sum::<usize>() + s as usize - 1;
    Ok(DeltaValue { k, s, value: delta_value(slope.value(), &conv, k, s), flat_index })
}

/// Lazy, strictly decreasing enumeration of all `δ_{k,s}`.
#[derive(Clone, Debug)]
pub struct DeltaStream {
    slope: Slope,
    conv: Convergents<BigInt>,
    k: usize,
    s: u64,
    flat: usize,
}

impl DeltaStream {
    pub fn new(slope: &Slope) -> Self {
        DeltaStream { slope: slope.clone(), conv: Convergents::new(), k: 0, s: 1, flat: 0 }
    }
}

impl Iterator for DeltaStream {
    type Item = DeltaValue;

    fn next(&mut self) -> Option<DeltaValue> {
        if self.s > self.slope.a(self.k + 1) {
            // Move to k + 1, which needs p_{k+1}, q_{k+1}.
            self.k += 1;
            self.s = 1;
            self.conv.push(BigInt::from(self.slope.a(self.k)));
        }
        let value = delta_value(self.slope.value(), &self.conv, self.k, self.s);
        let item = DeltaValue { k: self.k, s: self.s, value, flat_index: self.flat };
        self.s += 1;
        self.flat += 1;
        Some(item)
    }
}

/// First `count` values of the stream.
pub fn delta_table(slope: &Slope, count: usize) -> Vec<DeltaValue> {
    DeltaStream::new(slope).take(count).collect()
}

/// The lexicographically smallest `(k, s)` with `δ_{k,s} ≤ ρ` (ties count).
///
/// `ρ = 0` has no such pair: infinitely many `δ` exceed it.
pub fn minimal_indices(slope: &Slope, rho: &FieldElement) -> Result<DeltaValue> {
    slope.check_intercept(rho)?;
    if rho.is_zero() {
        return Err(Error::infinite("every delta value exceeds a zero intercept"));
    }
    Ok(DeltaStream::new(slope).find(|d| d.value <= *rho).expect("delta values tend to zero"))
}
