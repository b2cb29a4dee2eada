//! First-return maps of the Sturmian exchange on a subinterval.
//!
//! [`induce`] pushes the image of `I` forward under `T` one step at a time,
//! splitting the moving fragment whenever it straddles a discontinuity of `T`
//! or an endpoint of `I`. A fragment that lands inside `I` is finished: its
//! preimage is a piece of `I` on which the return time and the itinerary are
//! constant. Fragments that land outside `I` keep moving. All boundaries are
//! exact.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::iet::IntervalExchange;
use crate::scalar::Scalar;
use crate::word::BinaryWord;

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<S> {
    pub left: S,
    pub right: S,
    pub return_time: usize,
    pub itinerary: BinaryWord,
    /// `T^r(x) = x + translation` on the piece.
    pub translation: S,
}

impl<S: Scalar> Piece<S> {
    pub fn length(&self) -> S {
        self.right.clone() - self.left.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionResult<S> {
    pub left: S,
    pub right: S,
    /// Pieces in increasing order, partitioning `[left, right)`.
    pub pieces: Vec<Piece<S>>,
    /// The first-return map, rescaled affinely from `[left, right)` to `[0, 1)`.
    pub induced: IntervalExchange<S>,
}

impl<S: Scalar> InductionResult<S> {
    pub fn itineraries(&self) -> BTreeSet<BinaryWord> {
        self.pieces.iter().map(|p| p.itinerary.clone()).collect()
    }

    /// `Σ |piece| · return time`; equals 1 because the orbits of `I` sweep
    /// `[0, 1)` exactly once between returns.
    pub fn kac_sum(&self) -> S {
        self.pieces
            .iter()
            .fold(S::zero(), |acc, p| acc + p.length() * S::from_i64(p.return_time as i64))
    }

    pub fn return_times(&self) -> BTreeSet<usize> {
        self.pieces.iter().map(|p| p.return_time).collect()
    }
}

#[derive(Clone, Debug)]
struct Fragment<S> {
    left: S,
    right: S,
    /// Current image minus original position.
    shift: S,
    itinerary: BinaryWord,
}

pub fn induce<S: Scalar>(t: &IntervalExchange<S>, left: S, right: S) -> Result<InductionResult<S>> {
    induce_capped(t, left, right, DEFAULT_STEP_CAP)
}

/// [`induce`] with an explicit bound on the number of fragment moves.
pub fn induce_capped<S: Scalar>(
    t: &IntervalExchange<S>,
    left: S,
    right: S,
    cap: usize,
) -> Result<InductionResult<S>> {
    if t.interval_count() != 2 {
        return Err(Error::Invariant("itineraries are binary words; induce needs a two-interval exchange".into()));
    }
    if left >= right {
        return Err(Error::EmptyInterval { left: left.to_string(), right: right.to_string() });
    }
    if left.is_negative() || right > S::one() {
        return Err(Error::OutOfDomain {
            what: "interval",
            value: format!("[{left}, {right})"),
            range: "[0,1]",
        });
    }

    let mut pieces = Vec::new();
    let mut pending = vec![Fragment {
        left: left.clone(),
        right: right.clone(),
        shift: S::zero(),
        itinerary: BinaryWord::empty(),
    }];
    let mut steps = 0usize;
    while let Some(fragment) = pending.pop() {
        for letter in 0..2 {
            let (lo, hi) = t.interval(letter);
            let part_left = max(&fragment.left, &lo);
            let part_right = min(&fragment.right, &hi);
            if part_left >= part_right {
                continue;
            }
            steps += 1;
            if steps > cap {
                return Err(Error::IterationCap { cap, pieces: pieces.len() });
            }
            let tr = &t.translations()[letter];
            let moved_left = part_left + tr.clone();
            let moved_right = part_right + tr.clone();
            let shift = fragment.shift.clone() + tr.clone();
            let mut itinerary = fragment.itinerary.clone();
            itinerary.push(letter as u8);

            let in_left = max(&moved_left, &left);
            let in_right = min(&moved_right, &right);
            if in_left < in_right {
                pieces.push(Piece {
                    left: in_left.clone() - shift.clone(),
                    right: in_right.clone() - shift.clone(),
                    return_time: itinerary.len(),
                    itinerary: itinerary.clone(),
                    translation: shift.clone(),
                });
            }
            let below = (moved_left.clone(), min(&moved_right, &left));
            let above = (max(&moved_left, &right), moved_right);
            for (l, r) in [below, above] {
                if l < r {
                    pending.push(Fragment { left: l, right: r, shift: shift.clone(), itinerary: itinerary.clone() });
                }
            }
        }
    }

    pieces.sort_by(|a, b| a.left.cmp(&b.left));
    let pieces = merge_adjacent(pieces);
    check_partition(&pieces, &left, &right)?;
    let induced = induced_exchange(&pieces, &left, &right)?;
    Ok(InductionResult { left, right, pieces, induced })
}

fn max<S: Scalar>(x: &S, y: &S) -> S {
    if x >= y { x.clone() } else { y.clone() }
}

fn min<S: Scalar>(x: &S, y: &S) -> S {
    if x <= y { x.clone() } else { y.clone() }
}

fn merge_adjacent<S: Scalar>(pieces: Vec<Piece<S>>) -> Vec<Piece<S>> {
    let mut merged: Vec<Piece<S>> = Vec::with_capacity(pieces.len());
    for piece in pieces {
        match merged.last_mut() {
            Some(last) if last.right == piece.left && last.itinerary == piece.itinerary => {
                last.right = piece.right;
            }
            _ => merged.push(piece),
        }
    }
    merged
}

fn check_partition<S: Scalar>(pieces: &[Piece<S>], left: &S, right: &S) -> Result<()> {
    let mut cursor = left.clone();
    for p in pieces {
        if p.left != cursor {
            return Err(Error::Invariant(format!("induced pieces do not tile the interval at {cursor}")));
        }
        cursor = p.right.clone();
    }
    if cursor != *right {
        return Err(Error::Invariant(format!("induced pieces stop at {cursor}, not {right}")));
    }
    Ok(())
}

/// Groups consecutive pieces with a common translation into the intervals
/// of the induced exchange and rescales to `[0, 1)`.
fn induced_exchange<S: Scalar>(pieces: &[Piece<S>], left: &S, right: &S) -> Result<IntervalExchange<S>> {
    let width = right.clone() - left.clone();
    let mut breakpoints = Vec::new();
    let mut translations = vec![pieces[0].translation.clone()];
    for pair in pieces.windows(2) {
        if pair[1].translation != pair[0].translation {
            breakpoints.push((pair[1].left.clone() - left.clone()) / width.clone());
            translations.push(pair[1].translation.clone());
        }
    }
    let translations = translations.into_iter().map(|t| t / width.clone()).collect();
    IntervalExchange::new(breakpoints, translations)
        .map_err(|e| Error::Invariant(format!("induced map is not a 2- or 3-interval exchange: {e}")))
}

/// The `[0, β)`-itineraries of the Sturmian exchange: a lex-ordered pair
/// `R ≺ R′`, plus `RR′` when the induced map exchanges three intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBetaItineraries {
    pub r: BinaryWord,
    pub r_prime: BinaryWord,
    pub product: Option<BinaryWord>,
}

impl ZeroBetaItineraries {
    pub fn words(&self) -> BTreeSet<BinaryWord> {
        let mut set: BTreeSet<BinaryWord> = [self.r.clone(), self.r_prime.clone()].into();
        set.extend(self.product.clone());
        set
    }

    pub fn len(&self) -> usize {
        2 + self.product.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Itineraries of `[0, β)` with the two-or-three structure checked.
pub fn itineraries_zero_beta<S: Scalar>(alpha: &S, beta: &S) -> Result<ZeroBetaItineraries> {
    let t = IntervalExchange::two_interval(alpha.clone())?;
    let result = induce(&t, S::zero(), beta.clone())?;
    classify_itineraries(result.itineraries())
}

/// Splits a set of two or three itineraries into `R ≺ R′` and `RR′`.
pub fn classify_itineraries(words: BTreeSet<BinaryWord>) -> Result<ZeroBetaItineraries> {
    let mut by_length: Vec<BinaryWord> = words.into_iter().collect();
    match by_length.len() {
        2 => {
            let r_prime = by_length.pop().unwrap();
            let r = by_length.pop().unwrap();
            Ok(ZeroBetaItineraries { r, r_prime, product: None })
        }
        3 => {
            by_length.sort_by_key(|w| std::cmp::Reverse(w.len()));
            let longest = by_length.remove(0);
            by_length.sort();
            let (r, r_prime) = (by_length[0].clone(), by_length[1].clone());
            if r.concat(&r_prime) != longest {
                return Err(Error::Invariant(format!(
                    "three itineraries {r}, {r_prime}, {longest} without the RR' structure"
                )));
            }
            Ok(ZeroBetaItineraries { r, r_prime, product: Some(longest) })
        }
        n => Err(Error::Invariant(format!("{n} itineraries for an initial interval [0, β)"))),
    }
}
