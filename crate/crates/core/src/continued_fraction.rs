//! Eventually periodic continued fractions `[0; a₁, a₂, …]` and convergents.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadratic::Quadratic;
use crate::scalar::IntegerRing;

/// Continued fraction of a number in `(0, 1)`, integer part fixed to 0.
///
/// An empty period means a rational number; quadratic irrationals have a
/// non-empty period. Values are kept canonical: the period is primitive and
/// the preperiod is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

/// First partial quotients of a number, with `terminated` set when a rational
/// expansion ended before the requested count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub digits: Vec<u64>,
    pub terminated: bool,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::ContinuedFraction {
                input: format_cf(&preperiod, &period),
                reason: "partial quotients must be positive".into(),
            });
        }
        if period.is_empty() && preperiod.is_empty() {
            return Err(Error::ContinuedFraction {
                input: "[0;]".into(),
                reason: "no partial quotients (value 0)".into(),
            });
        }
        if period.is_empty() && preperiod == [1] {
            return Err(Error::ContinuedFraction {
                input: "[0;1]".into(),
                reason: "value 1 is outside (0,1)".into(),
            });
        }
        let mut cf = ContinuedFraction { preperiod, period };
        cf.canonicalize();
        Ok(cf)
    }

    pub fn periodic(period: Vec<u64>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    fn canonicalize(&mut self) {
        if self.period.is_empty() {
            // [.., a, 1] = [.., a + 1]
            if self.preperiod.len() >= 2 && self.preperiod.last() == Some(&1) {
                self.preperiod.pop();
                *self.preperiod.last_mut().unwrap() += 1;
            }
            return;
        }
        let n = self.period.len();
        if let Some(len) = (1..n).find(|&l| n.is_multiple_of(l) && (l..n).all(|i| self.period[i] == self.period[i - l])) {
            self.period.truncate(len);
        }
        while let (Some(&last_pre), Some(&last_per)) = (self.preperiod.last(), self.period.last()) {
            if last_pre != last_per {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_irrational(&self) -> bool {
        !self.period.is_empty()
    }

    /// The partial quotient `a_i` for `i ≥ 1`; `None` past the end of a
    /// rational expansion.
    pub fn digit(&self, i: usize) -> Option<u64> {
        assert!(i >= 1, "partial quotients are indexed from 1");
        let j = i - 1;
        if j < self.preperiod.len() {
            Some(self.preperiod[j])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(j - self.preperiod.len()) % self.period.len()])
        }
    }

    /// `a₁, a₂, …` (finite for rationals).
    pub fn digits(&self) -> impl Iterator<Item = u64> + '_ {
        (1..).map_while(move |i| self.digit(i))
    }

    pub fn unfolded(&self, n: usize) -> Vec<u64> {
        self.digits().take(n).collect()
    }

    /// Moves digits from the period into the preperiod until it holds at
    /// least `n` digits. The represented value is unchanged.
    fn unrolled(&self, n: usize) -> (Vec<u64>, Vec<u64>) {
        let mut pre = self.preperiod.clone();
        let mut per = self.period.clone();
        while pre.len() < n && !per.is_empty() {
            pre.push(per[0]);
            per.rotate_left(1);
        }
        (pre, per)
    }

    fn require_irrational(&self) -> Result<()> {
        if self.is_irrational() {
            Ok(())
        } else {
            Err(Error::RationalSlope(self.to_string()))
        }
    }

    /// `true` iff the value exceeds 1/2, read off `a₁ = 1`.
    pub fn exceeds_half(&self) -> bool {
        self.digit(1) == Some(1)
    }

    /// Continued fraction of the renormalized slope after inducing on
    /// `[0, max{ε, 1−ε})`: `(2ε−1)/ε` when `ε > 1/2`, else `ε/(1−ε)`.
    pub fn renormalize(&self) -> Result<Self> {
        self.require_irrational()?;
        let (mut pre, per) = self.unrolled(3);
        if pre[0] == 1 {
            if pre[1] >= 2 {
                pre[1] -= 1;
            } else {
                pre.drain(..2);
                pre[0] += 1;
            }
        } else {
            pre[0] -= 1;
        }
        Self::new(pre, per)
    }

    /// Continued fraction of `1 − ε`.
    pub fn complement(&self) -> Result<Self> {
        self.require_irrational()?;
        let (mut pre, per) = self.unrolled(2);
        if pre[0] == 1 {
            pre.remove(0);
            pre[0] += 1;
        } else {
            let a1 = pre[0];
            pre[0] = a1 - 1;
            pre.insert(0, 1);
        }
        Self::new(pre, per)
    }

    /// Exact value. For a periodic tail the fixed-point quadratic is solved
    /// and the preperiod folded in through its convergents.
    pub fn value<T: IntegerRing>(&self) -> Result<Quadratic<T>> {
        let int = |x: u64| T::from_u64(x).expect("partial quotient fits the backend");
        let (p_pre, q_pre) = matrix(self.preperiod.iter().map(|&a| int(a)));
        // [0; a₁…a_m, z] = (p_m z + p_{m−1}) / (q_m z + q_{m−1})
        let [[pm, pm1], [qm, qm1]] = [[p_pre[0].clone(), p_pre[1].clone()], [q_pre[0].clone(), q_pre[1].clone()]];
        if self.period.is_empty() {
            return Ok(Quadratic::from_ratio(pm, qm)?);
        }
        // [0; b₁…b_k] = 1/[b₁; b₂…b_k], so the rows come out swapped.
        let (top, bottom) = matrix(self.period.iter().map(|&a| int(a)));
        let (q, q1, p, p1) = (top[0].clone(), top[1].clone(), bottom[0].clone(), bottom[1].clone());
        // z = [b₁; b₂, …, b_k, z] solves q z² + (q' − p) z − p' = 0, z > 1.
        let two = T::one() + T::one();
        let four = two.clone() * two.clone();
        let diff = p.clone() - q1.clone();
        let discriminant = diff.clone() * diff.clone() + four * q.clone() * p1;
        let z = Quadratic::new(diff, T::one(), two * q, discriminant)?;
        let numerator = z.checked_mul(&Quadratic::integer(pm))?.checked_add(&Quadratic::integer(pm1))?;
        let denominator = z.checked_mul(&Quadratic::integer(qm))?.checked_add(&Quadratic::integer(qm1))?;
        Ok(numerator.checked_div(&denominator)?)
    }

    /// Recovers the eventually periodic expansion of `x ∈ (0,1)` by running
    /// the Gauss map exactly until a state repeats.
    pub fn from_value<T: IntegerRing>(x: &Quadratic<T>) -> Result<Self> {
        check_unit_interval(x)?;
        const LIMIT: usize = 100_000;
        let mut seen: HashMap<Quadratic<T>, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut state = x.clone();
        for i in 0..LIMIT {
            if state.is_zero() {
                return ContinuedFraction::new(digits, Vec::new());
            }
            if let Some(&start) = seen.get(&state) {
                let period = digits.split_off(start);
                return ContinuedFraction::new(digits, period);
            }
            seen.insert(state.clone(), i);
            let (a, next) = gauss_step(&state)?;
            digits.push(a);
            state = next;
        }
        Err(Error::NotPeriodic { value: x.to_string(), limit: LIMIT })
    }
}

fn check_unit_interval<T: IntegerRing>(x: &Quadratic<T>) -> Result<()> {
    if x.signum() != std::cmp::Ordering::Greater || x.floor_int() != T::zero() {
        return Err(Error::OutOfDomain { what: "x", value: x.to_string(), range: "(0,1)" });
    }
    Ok(())
}

fn gauss_step<T: IntegerRing>(x: &Quadratic<T>) -> Result<(u64, Quadratic<T>)> {
    let inv = x.recip()?;
    let a = inv.floor_int();
    let digit = a.to_u64().ok_or_else(|| Error::ContinuedFraction {
        input: x.to_string(),
        reason: "partial quotient exceeds u64".into(),
    })?;
    let next = inv.checked_sub(&Quadratic::integer(a))?;
    Ok((digit, next))
}

/// First `n` partial quotients of `x ∈ (0,1)` by the exact Gauss map.
pub fn expand<T: IntegerRing>(x: &Quadratic<T>, n: usize) -> Result<Expansion> {
    check_unit_interval(x)?;
    let mut digits = Vec::with_capacity(n);
    let mut state = x.clone();
    while digits.len() < n {
        if state.is_zero() {
            return Ok(Expansion { digits, terminated: true });
        }
        let (a, next) = gauss_step(&state)?;
        digits.push(a);
        state = next;
    }
    Ok(Expansion { digits, terminated: state.is_zero() && x.is_rational() })
}

/// Product of `[[a, 1], [1, 0]]` over the digits, returned as
/// `([p_m, p_{m−1}], [q_m, q_{m−1}])` for the continued fraction `[0; digits]`
/// (the identity start encodes `p₀ = 0, q₀ = 1, p₋₁ = 1, q₋₁ = 0`).
fn matrix<T: IntegerRing>(digits: impl Iterator<Item = T>) -> ([T; 2], [T; 2]) {
    let (mut p, mut p_prev) = (T::zero(), T::one());
    let (mut q, mut q_prev) = (T::one(), T::zero());
    for a in digits {
        let p_next = a.clone() * p.clone() + p_prev;
        let q_next = a * q.clone() + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    ([p, p_prev], [q, q_prev])
}

/// Convergent numerators and denominators `p_k, q_k` for `k = −1, 0, …, K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergents<T> {
    p: Vec<T>,
    q: Vec<T>,
}

impl<T: IntegerRing> Convergents<T> {
    pub fn new() -> Self {
        Convergents { p: vec![T::one(), T::zero()], q: vec![T::zero(), T::one()] }
    }

    /// Convergents of `cf` through index `k`. Panics if a rational `cf`
    /// has fewer than `k` partial quotients.
    pub fn of(cf: &ContinuedFraction, k: usize) -> Self {
        let mut c = Self::new();
        for i in 1..=k {
            let a = cf.digit(i).expect("continued fraction too short");
            c.push(T::from_u64(a).expect("partial quotient fits the backend"));
        }
        c
    }

    /// Appends `p_{K+1}, q_{K+1}` for the next partial quotient.
    pub fn push(&mut self, a: T) {
        let n = self.p.len();
        let p = a.clone() * self.p[n - 1].clone() + self.p[n - 2].clone();
        let q = a * self.q[n - 1].clone() + self.q[n - 2].clone();
        self.p.push(p);
        self.q.push(q);
    }

    /// Largest index `K` available.
    pub fn last_index(&self) -> usize {
        self.p.len() - 2
    }

    /// `p_k` for `k ≥ −1`.
    pub fn p(&self, k: isize) -> &T {
        &self.p[(k + 1) as usize]
    }

    pub fn q(&self, k: isize) -> &T {
        &self.q[(k + 1) as usize]
    }

    /// `p_{−1}, p₀, …, p_K`.
    pub fn numerators(&self) -> &[T] {
        &self.p
    }

    pub fn denominators(&self) -> &[T] {
        &self.q
    }
}

impl<T: IntegerRing> Default for Convergents<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn format_cf(pre: &[u64], per: &[u64]) -> String {
    let mut parts: Vec<String> = pre.iter().map(u64::to_string).collect();
    if !per.is_empty() {
        let inner: Vec<String> = per.iter().map(u64::to_string).collect();
        parts.push(format!("({})", inner.join(",")));
    }
    format!("[0;{}]", parts.join(","))
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cf(&self.preperiod, &self.period))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// `[0;a1,a2,…,(b1,…,bk)]`; the period, if any, must be parenthesized and
    /// come last.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ContinuedFraction { input: s.to_string(), reason: reason.into() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("[0;")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected `[0;a1,...,(b1,...)]`"))?;
        let (pre_text, per_text) = match body.find('(') {
            Some(open) => {
                let close = body.rfind(')').ok_or_else(|| bad("unclosed period"))?;
                if close != body.len() - 1 {
                    return Err(bad("the period must come last"));
                }
                (&body[..open], &body[open + 1..close])
            }
            None => (body, ""),
        };
        let numbers = |text: &str| -> Result<Vec<u64>> {
            text.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u64>().map_err(|_| bad(&format!("`{t}` is not a positive integer"))))
                .collect()
        };
        let pre_text = pre_text.strip_suffix(',').unwrap_or(pre_text);
        if pre_text.contains(",,") || per_text.contains(",,") {
            return Err(bad("empty partial quotient"));
        }
        let preperiod = numbers(pre_text)?;
        let period = numbers(per_text)?;
        if body.contains('(') && period.is_empty() {
            return Err(bad("empty period"));
        }
        ContinuedFraction::new(preperiod, period).map_err(|e| match e {
            Error::ContinuedFraction { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}
