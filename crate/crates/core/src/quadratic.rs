//! Exact arithmetic in a real quadratic field.
//!
//! A [`Quadratic`] stores `(a + b·√d) / c` with `c > 0`, `gcd(a, b, c) = 1`
//! and `d` square-free. Rationals use `d = 0`, so every value with `b = 0`
//! carries `d = 0` and mixes freely with any radicand.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{IntegerRing, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands sqrt({left}) and sqrt({right})")]
    IncompatibleRadicands { left: String, right: String },
    #[error("radicand must be non-negative, got {0}")]
    NegativeRadicand(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quadratic<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: IntegerRing> Quadratic<T> {
    /// Builds `(a + b·√d) / c`, extracting square factors from `d`.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self, ArithmeticError> {
        if c.is_zero() {
            return Err(ArithmeticError::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(ArithmeticError::NegativeRadicand(d.to_string()));
        }
        let (outside, core) = square_free_split(d);
        let b = b * outside;
        if core.is_one() {
            return Ok(Self::normalized(a + b, T::zero(), c, T::zero()));
        }
        Ok(Self::normalized(a, b, c, core))
    }

    pub fn from_ratio(p: T, q: T) -> Result<Self, ArithmeticError> {
        Self::new(p, T::zero(), q, T::zero())
    }

    /// `√d` itself.
    pub fn sqrt(d: T) -> Result<Self, ArithmeticError> {
        Self::new(T::zero(), T::one(), T::one(), d)
    }

    pub fn integer(n: T) -> Self {
        Self::normalized(n, T::zero(), T::one(), T::zero())
    }

    fn normalized(mut a: T, mut b: T, mut c: T, mut d: T) -> Self {
        debug_assert!(!c.is_zero());
        if b.is_zero() || d.is_zero() {
            b = T::zero();
            d = T::zero();
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a = a / g.clone();
            b = b / g.clone();
            c = c / g;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Quadratic { a, b, c, d }
    }

    pub fn rational_part(&self) -> &T {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &T {
        &self.b
    }

    pub fn denominator(&self) -> &T {
        &self.c
    }

    /// The square-free radicand, `0` for rationals.
    pub fn radicand(&self) -> &T {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<T, ArithmeticError> {
        if self.d.is_zero() {
            Ok(other.d.clone())
        } else if other.d.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(ArithmeticError::IncompatibleRadicands {
                left: self.d.to_string(),
                right: other.d.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let d = self.common_radicand(other)?;
        if self.c == other.c {
            return Ok(Self::normalized(
                self.a.clone() + other.a.clone(),
                self.b.clone() + other.b.clone(),
                self.c.clone(),
                d,
            ));
        }
        Ok(Self::normalized(
            self.a.clone() * other.c.clone() + other.a.clone() * self.c.clone(),
            self.b.clone() * other.c.clone() + other.b.clone() * self.c.clone(),
            self.c.clone() * other.c.clone(),
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithmeticError> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let d = self.common_radicand(other)?;
        let a = self.a.clone() * other.a.clone() + self.b.clone() * other.b.clone() * d.clone();
        let b = self.a.clone() * other.b.clone() + self.b.clone() * other.a.clone();
        Ok(Self::normalized(a, b, self.c.clone() * other.c.clone(), d))
    }

    pub fn recip(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        // 1 / ((a + b√d)/c) = c(a − b√d) / (a² − b²d)
        let norm = self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * self.d.clone();
        Ok(Self::normalized(
            self.c.clone() * self.a.clone(),
            -(self.c.clone() * self.b.clone()),
            norm,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        sign_of_surd(&self.a, &self.b, &self.d)
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, ArithmeticError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Greatest integer `≤ self`, computed from an integer square root.
    pub fn floor_int(&self) -> T {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        let n = self.b.clone() * self.b.clone() * self.d.clone();
        let r = n.sqrt();
        // floor(a ± √n) for the numerator, then floor division by c > 0.
        let numerator_floor = if self.b.is_positive() {
            self.a.clone() + r
        } else if r.clone() * r.clone() == n {
            self.a.clone() - r
        } else {
            self.a.clone() - r - T::one()
        };
        numerator_floor.div_floor(&self.c)
    }

    /// Floating-point approximation. Used for display and as a test witness,
    /// never for decisions.
    pub fn to_f64(&self) -> f64 {
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return f(&self.a) / f(&self.c);
        }
        let root = f(&self.d).sqrt();
        if self.a.is_positive() != self.b.is_positive() && !self.a.is_zero() {
            // Catastrophic cancellation: go through the conjugate.
            let norm = self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * self.d.clone();
            let conj = f(&self.a) - f(&self.b) * root;
            return f(&norm) / (f(&self.c) * conj);
        }
        (f(&self.a) + f(&self.b) * root) / f(&self.c)
    }
}

/// Splits `d = s²·k` with `k` square-free, returning `(s, k)`.
fn square_free_split<T: IntegerRing>(d: T) -> (T, T) {
    if d.is_zero() {
        return (T::one(), T::zero());
    }
    let mut rest = d;
    let mut outside = T::one();
    let mut core = T::one();
    let mut p = T::from_u8(2).expect("small constant");
    while p.clone() * p.clone() <= rest {
        let mut exponent = 0u32;
        while (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            exponent += 1;
        }
        for _ in 0..exponent / 2 {
            outside = outside * p.clone();
        }
        if exponent % 2 == 1 {
            core = core * p.clone();
        }
        p = p + T::one();
    }
    (outside, core * rest)
}

fn sign_of_surd<T: IntegerRing>(a: &T, b: &T, d: &T) -> Ordering {
    let sa = sign(a);
    let sb = if d.is_zero() { Ordering::Equal } else { sign(b) };
    match (sa, sb) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (x, y) if x == y => x,
        _ => {
            let lhs = a.clone() * a.clone();
            let rhs = b.clone() * b.clone() * d.clone();
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

fn sign<T: IntegerRing>(x: &T) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl<T: IntegerRing> Zero for Quadratic<T> {
    fn zero() -> Self {
        Self::integer(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: IntegerRing> One for Quadratic<T> {
    fn one() -> Self {
        Self::integer(T::one())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<T: IntegerRing> $trait for Quadratic<T> {
            type Output = Quadratic<T>;
            fn $method(self, rhs: Self) -> Self::Output {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<'a, T: IntegerRing> $trait<&'a Quadratic<T>> for &'a Quadratic<T> {
            type Output = Quadratic<T>;
            fn $method(self, rhs: &'a Quadratic<T>) -> Self::Output {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl<T: IntegerRing> Neg for Quadratic<T> {
    type Output = Quadratic<T>;
    fn neg(self) -> Self::Output {
        Quadratic { a: -self.a, b: -self.b, c: self.c, d: self.d }
    }
}

impl<T: IntegerRing> PartialOrd for Quadratic<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when the radicands differ; use [`Quadratic::checked_cmp`] to get an
/// error instead.
impl<T: IntegerRing> Ord for Quadratic<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.checked_cmp(other).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: IntegerRing> Scalar for Quadratic<T> {
    type Int = T;

    fn from_int(n: T) -> Self {
        Self::integer(n)
    }

    fn is_rational(&self) -> bool {
        Quadratic::is_rational(self)
    }

    fn floor(&self) -> T {
        self.floor_int()
    }

    fn approx(&self) -> f64 {
        self.to_f64()
    }
}

impl<T: IntegerRing> fmt::Display for Quadratic<T> {
    /// `p`, `p/q`, `a+b*sqrt(d)` or `(a+b*sqrt(d))/c`; parses back to the
    /// same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            };
        }
        let mut numerator = String::new();
        if !self.a.is_zero() {
            numerator.push_str(&self.a.to_string());
        }
        let magnitude = self.b.abs();
        if self.b.is_negative() {
            numerator.push('-');
        } else if !self.a.is_zero() {
            numerator.push('+');
        }
        if !magnitude.is_one() {
            numerator.push_str(&format!("{magnitude}*"));
        }
        numerator.push_str(&format!("sqrt({})", self.d));
        if self.c.is_one() {
            write!(f, "{numerator}")
        } else {
            write!(f, "({numerator})/{}", self.c)
        }
    }
}

impl<T: IntegerRing> FromStr for Quadratic<T> {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { src: &compact, pos: 0, original: s };
        let value = parser.expression()?;
        if parser.pos != compact.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    original: &'s str,
}

impl<'s> Parser<'s> {
    fn error(&self, reason: &str) -> ArithmeticError {
        ArithmeticError::Parse { input: self.original.to_string(), reason: reason.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn integer<T: IntegerRing>(&mut self) -> Result<T, ArithmeticError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse::<T>().map_err(|_| self.error("integer out of range"))
    }

    // expression := sum ('/' integer)?
    fn expression<T: IntegerRing>(&mut self) -> Result<Quadratic<T>, ArithmeticError> {
        let numerator = self.sum()?;
        if self.eat('/') {
            let negative = self.eat('-');
            let mut q: T = self.integer()?;
            if negative {
                q = -q;
            }
            if q.is_zero() {
                return Err(ArithmeticError::ZeroDenominator);
            }
            return numerator.checked_div(&Quadratic::integer(q));
        }
        Ok(numerator)
    }

    // sum := ['-'|'+'] term (('+'|'-') term)*
    fn sum<T: IntegerRing>(&mut self) -> Result<Quadratic<T>, ArithmeticError> {
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut total = Quadratic::zero();
        loop {
            let term = self.term()?;
            let term = if negative { -term } else { term };
            total = total.checked_add(&term)?;
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(total);
            }
        }
    }

    // term := '(' expression ')' | integer ['*' sqrt] | sqrt
    fn term<T: IntegerRing>(&mut self) -> Result<Quadratic<T>, ArithmeticError> {
        if self.eat('(') {
            let inner = self.expression()?;
            if !self.eat(')') {
                return Err(self.error("unbalanced parenthesis"));
            }
            return Ok(inner);
        }
        if self.peek() == Some('s') {
            return self.sqrt();
        }
        let n: T = self.integer()?;
        if self.eat('*') {
            let root = self.sqrt()?;
            return root.checked_mul(&Quadratic::integer(n));
        }
        Ok(Quadratic::integer(n))
    }

    fn sqrt<T: IntegerRing>(&mut self) -> Result<Quadratic<T>, ArithmeticError> {
        if !self.eat_str("sqrt(") {
            return Err(self.error("expected sqrt(d)"));
        }
        let d: T = self.integer()?;
        if !self.eat(')') {
            return Err(self.error("unbalanced parenthesis in sqrt"));
        }
        Quadratic::sqrt(d)
    }
}
