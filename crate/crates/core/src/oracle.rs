//! Brute-force abelian returns, straight from the definition.
//!
//! A long prefix of the Sturmian word is generated by exact orbit coding.
//! For each prefix `w` of length `n`, a sliding window finds every position
//! where a factor abelian-equivalent to `w` starts; the words between
//! consecutive positions are the abelian returns to `w`. Nothing here uses
//! the delta sequence, the renormalization loop or induction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::Sign;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::returns::Weight;
use crate::scalar::Scalar;
use crate::slope::Slope;
use crate::word::{shortlex, BinaryWord};
use crate::{BigInt, FieldElement};

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Longest prefix examined.
    pub max_prefix: usize,
    /// Initial length of the generated word.
    pub word_len: usize,
    /// Occurrences of each prefix class required before trusting a scan.
    pub min_occurrences: usize,
    /// The word is doubled on shortage until it would exceed this length.
    pub hard_cap: usize,
    /// Rescan heavy prefixes in the independently coded word of `(1−α, 1−ρ)`.
    pub cross_check_heavy: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_prefix: 60,
            word_len: 100_000,
            min_occurrences: 50,
            hard_cap: 1 << 21,
            cross_check_heavy: true,
        }
    }
}

/// Returns to one class found by a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub occurrences: usize,
    pub returns: BTreeSet<BinaryWord>,
    /// Largest number of zeros in a window of length `n`.
    pub most_zeros: usize,
}

/// Scans `word` for factors abelian-equivalent to its prefix of length `n`.
pub fn scan_prefix_class(word: &BinaryWord, n: usize) -> Scan {
    let bits = word.symbols();
    assert!(n >= 1 && n <= bits.len(), "prefix length {n} outside 1..={}", bits.len());
    let target = bits[..n].iter().filter(|&&b| b == 0).count();
    let mut zeros = target;
    let mut previous = 0;
    let mut occurrences = 1;
    // Sturmian scans see two or three distinct returns, so a linear probe
    // over the distinct ones found so far beats hashing.
    let mut distinct: Vec<&[u8]> = Vec::new();
    let mut most_zeros = target;
    for start in 1..=bits.len() - n {
        zeros = zeros + (bits[start + n - 1] == 0) as usize - (bits[start - 1] == 0) as usize;
        most_zeros = most_zeros.max(zeros);
        if zeros == target {
            let w = &bits[previous..start];
            if !distinct.contains(&w) {
                distinct.push(w);
            }
            previous = start;
            occurrences += 1;
        }
    }
    let returns = distinct.into_iter().map(|w| BinaryWord::from_bits(w.iter().copied())).collect();
    Scan { occurrences, returns, most_zeros }
}

/// Abelian returns to the length-`n` prefix of `word`.
pub fn abelian_returns_of_factor(word: &BinaryWord, n: usize) -> Result<BTreeSet<BinaryWord>> {
    let scan = scan_prefix_class(word, n);
    if scan.occurrences < 2 {
        return Err(Error::InsufficientData { prefix: n, found: scan.occurrences, scanned: word.len() });
    }
    Ok(scan.returns)
}

/// Checks that a return set has two words, or three of the form
/// `{w₁, w₂, w₁w₂}` with `w₁ ≺ w₂`. The order is `0 < 1` for light prefixes
/// and `1 < 0` for heavy ones, where `E` turns the prefix light. Returns a
/// description of the failure.
pub fn structure_violation(returns: &BTreeSet<BinaryWord>, weight: Weight) -> Option<String> {
    let words = shortlex(returns);
    match words.len() {
        2 => None,
        3 => {
            let key = |w: &BinaryWord| if weight == Weight::Light { w.clone() } else { w.exchange() };
            let first_smaller = key(&words[0]) < key(&words[1]);
            let (w1, w2) = if first_smaller { (&words[0], &words[1]) } else { (&words[1], &words[0]) };
            if w1.concat(w2) == words[2] {
                None
            } else {
                Some(format!("three returns {words:?} are not {{w1, w2, w1w2}}"))
            }
        }
        k => Some(format!("{k} returns {words:?}")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub per_prefix: BTreeMap<usize, Vec<BinaryWord>>,
    /// Light when the prefix has the larger zero count among windows of its length.
    pub weights: BTreeMap<usize, Weight>,
    pub accumulated: Vec<BinaryWord>,
    /// Last prefix length that added a new word.
    pub last_growth: usize,
    /// `last_growth` plus twice the longest return seen, if within `max_prefix`.
    pub stabilized_at: Option<usize>,
    pub generated_length: usize,
    /// False when the word hit the hard cap with a prefix class still short of
    /// `min_occurrences`.
    pub authoritative: bool,
    /// Per-prefix sets failing the two-or-three structure.
    pub violations: Vec<String>,
    /// Heavy prefixes confirmed in the exchanged word.
    pub heavy_cross_checks: usize,
    /// Heavy prefixes whose returns differ in the exchanged word.
    pub cross_check_failures: Vec<String>,
}

impl OracleReport {
    pub fn stabilized(&self) -> bool {
        self.stabilized_at.is_some()
    }

    pub fn accumulated_set(&self) -> BTreeSet<BinaryWord> {
        self.accumulated.iter().cloned().collect()
    }
}

/// Prefix of length `len` of `u_{α,ρ}`, coded exactly with integer updates.
///
/// The letter at step `t` is 0 iff `ρ + i − (j+1)α < 0`, where `i` counts the
/// zeros so far and `j = t`. Scaling by both denominators turns this into the
/// sign of `P + Q√d` with `P` and `Q` integers that change by fixed amounts.
pub fn sturmian_prefix(slope: &Slope, rho: &FieldElement, len: usize) -> Result<BinaryWord> {
    slope.check_intercept(rho)?;
    let alpha = slope.value();
    let d = alpha.radicand().clone();
    let (ac, rc) = (alpha.denominator().clone(), rho.denominator().clone());
    let scale = &ac * &rc;
    let a0 = alpha.rational_part() * &rc;
    let a1 = alpha.surd_coefficient() * &rc;
    // j = 0, i = 0: ρ − α
    let mut p = rho.rational_part() * &ac - &a0;
    let mut q = rho.surd_coefficient() * &ac - &a1;
    let mut bits = Vec::with_capacity(len);
    for _ in 0..len {
        if surd_sign(&p, &q, &d) == Ordering::Less {
            bits.push(0);
            p += &scale;
        } else {
            bits.push(1);
        }
        p -= &a0;
        q -= &a1;
    }
    Ok(BinaryWord::from_bits(bits))
}

/// Sign of `p + q√d`.
fn surd_sign(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let (sp, sq) = (p.sign(), q.sign());
    if sq == Sign::NoSign || sp == sq {
        return p.cmp(&BigInt::zero()).then(q.cmp(&BigInt::zero()));
    }
    if sp == Sign::NoSign {
        return q.cmp(&BigInt::zero());
    }
    // Opposite signs: the larger of p² and q²d wins.
    let by_size = (p * p).cmp(&(q * q * d));
    if sp == Sign::Plus { by_size } else { by_size.reverse() }
}

/// Union of abelian returns over the prefixes of length `1..=max_prefix`.
pub fn apr_bruteforce(slope: &Slope, rho: &FieldElement, config: &OracleConfig) -> Result<OracleReport> {
    slope.check_intercept(rho)?;
    if rho.is_zero() {
        return Err(Error::infinite("a zero intercept has infinitely many abelian returns to prefixes"));
    }
    let mut len = config.word_len.max(config.max_prefix + 1);
    let mut authoritative = true;
    let (word, scans) = loop {
        let word = sturmian_prefix(slope, rho, len)?;
        let scans: Vec<Scan> = (1..=config.max_prefix).map(|n| scan_prefix_class(&word, n)).collect();
        let short = scans.iter().any(|s| s.occurrences < config.min_occurrences);
        if !short {
            break (word, scans);
        }
        if len * 2 > config.hard_cap {
            authoritative = false;
            break (word, scans);
        }
        len *= 2;
    };

    let bits = word.symbols();
    let one = FieldElement::from_i64(1);
    let exchanged = if config.cross_check_heavy {
        let other = sturmian_prefix(&slope.complement(), &(one - rho.clone()), word.len())?;
        // The two codings disagree only when the orbit of ρ meets a breakpoint.
        (other == word.exchange()).then_some(other)
    } else {
        None
    };

    let mut report = OracleReport {
        per_prefix: BTreeMap::new(),
        weights: BTreeMap::new(),
        accumulated: Vec::new(),
        last_growth: 0,
        stabilized_at: None,
        generated_length: word.len(),
        authoritative,
        violations: Vec::new(),
        heavy_cross_checks: 0,
        cross_check_failures: Vec::new(),
    };
    let mut accumulated = BTreeSet::new();
    let mut zeros = 0;
    for (n, scan) in (1..=config.max_prefix).zip(scans) {
        if scan.occurrences < 2 {
            return Err(Error::InsufficientData { prefix: n, found: scan.occurrences, scanned: word.len() });
        }
        zeros += (bits[n - 1] == 0) as usize;
        let weight = if zeros == scan.most_zeros { Weight::Light } else { Weight::Heavy };
        if weight == Weight::Heavy {
            if let Some(other) = &exchanged {
                let mirrored: BTreeSet<BinaryWord> = scan.returns.iter().map(BinaryWord::exchange).collect();
                if scan_prefix_class(other, n).returns != mirrored {
                    report.cross_check_failures.push(format!("n={n}: heavy returns differ in the exchanged word"));
                }
                report.heavy_cross_checks += 1;
            }
        }
        if let Some(problem) = structure_violation(&scan.returns, weight) {
            report.violations.push(format!("n={n}: {problem}"));
        }
        let before = accumulated.len();
        accumulated.extend(scan.returns.iter().cloned());
        if accumulated.len() > before {
            report.last_growth = n;
        }
        report.weights.insert(n, weight);
        report.per_prefix.insert(n, shortlex(&scan.returns));
    }
    let longest = accumulated.iter().map(BinaryWord::len).max().unwrap_or(0);
    let settled = report.last_growth + 2 * longest;
    report.stabilized_at = (settled <= config.max_prefix).then_some(settled);
    report.accumulated = shortlex(&accumulated);
    Ok(report)
}
