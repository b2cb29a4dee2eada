//! Finite binary words.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A finite word over `{0, 1}` with its abelian vector cached.
///
/// `Ord` is the lexicographic order with `0 < 1` and a proper prefix smaller
/// than its extensions. Use [`shortlex`] for the presentation order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    symbols: Vec<u8>,
    ones: usize,
}

impl BinaryWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(bit: u8) -> Self {
        assert!(bit <= 1, "letters are 0 or 1");
        BinaryWord { symbols: vec![bit], ones: bit as usize }
    }

    /// Panics if a symbol is not 0 or 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        let symbols: Vec<u8> = bits.into_iter().collect();
        assert!(symbols.iter().all(|&b| b <= 1), "letters are 0 or 1");
        let ones = symbols.iter().filter(|&&b| b == 1).count();
        BinaryWord { symbols, ones }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `(|w|₀, |w|₁)`.
    pub fn ab_vector(&self) -> (usize, usize) {
        (self.symbols.len() - self.ones, self.ones)
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1, "letters are 0 or 1");
        self.ones += bit as usize;
        self.symbols.push(bit);
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        BinaryWord { symbols, ones: self.ones + other.ones }
    }

    pub fn slice(&self, start: usize, end: usize) -> BinaryWord {
        BinaryWord::from_bits(self.symbols[start..end].iter().copied())
    }

    /// The letter-exchange morphism `0 ↔ 1`.
    pub fn exchange(&self) -> BinaryWord {
        BinaryWord {
            symbols: self.symbols.iter().map(|b| 1 - b).collect(),
            ones: self.symbols.len() - self.ones,
        }
    }

    /// Mirror image.
    pub fn reversed(&self) -> BinaryWord {
        BinaryWord { symbols: self.symbols.iter().rev().copied().collect(), ones: self.ones }
    }

    pub fn is_abelian_equivalent(&self, other: &BinaryWord) -> bool {
        self.ab_vector() == other.ab_vector()
    }

    pub fn starts_with(&self, bit: u8) -> bool {
        self.symbols.first() == Some(&bit)
    }

    pub fn ends_with(&self, bit: u8) -> bool {
        self.symbols.last() == Some(&bit)
    }
}

impl Ord for BinaryWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols.cmp(&other.symbols)
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "ε");
        }
        for b in &self.symbols {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Invariant(format!("`{other}` is not a binary letter"))),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(BinaryWord::from_bits)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order by length, then lexicographically.
pub fn shortlex_cmp(x: &BinaryWord, y: &BinaryWord) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

/// The words of `set` in (length, lex) order.
pub fn shortlex<'a>(set: impl IntoIterator<Item = &'a BinaryWord>) -> Vec<BinaryWord> {
    let mut words: Vec<BinaryWord> = set.into_iter().cloned().collect();
    words.sort_by(shortlex_cmp);
    words.dedup();
    words
}

/// Parses a list of words; handy in tests.
pub fn word_set(words: &[&str]) -> BTreeSet<BinaryWord> {
    words.iter().map(|w| w.parse().expect("binary literal")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn exchange_examples() {
        assert_eq!(w("001").exchange(), w("110"));
        assert_eq!(BinaryWord::empty().exchange(), BinaryWord::empty());
    }

    #[test]
    fn lexicographic_order_puts_prefixes_first() {
        assert!(w("0") < w("01"));
        assert!(w("001") < w("01"));
        assert!(w("00100101") < w("00101"));
        assert_eq!(shortlex_cmp(&w("01"), &w("001")), Ordering::Less);
    }

    #[test]
    fn shortlex_presentation() {
        let set = word_set(&["001", "10", "0", "01", "1"]);
        let listed: Vec<String> = shortlex(&set).iter().map(|x| x.to_string()).collect();
        assert_eq!(listed, ["0", "1", "01", "10", "001"]);
    }

    #[test]
    fn abelian_vector_tracks_pushes() {
        let mut x = w("0110");
        x.push(1);
        assert_eq!(x.ab_vector(), (2, 3));
        assert_eq!(x.concat(&w("00")).ab_vector(), (4, 3));
    }

    proptest! {
        #[test]
        fn exchange_is_an_involution(bits in proptest::collection::vec(0u8..=1, 0..64)) {
            let x = BinaryWord::from_bits(bits);
            prop_assert_eq!(x.exchange().exchange(), x.clone());
            let (z, o) = x.ab_vector();
            prop_assert_eq!(x.exchange().ab_vector(), (o, z));
        }
    }
}
