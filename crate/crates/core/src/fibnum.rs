//! Fibonacci numbers and Zeckendorf numeration.
//!
//! Representations are binary words read most significant digit first. A word
//! `b_1 ⋯ b_t` has value `Σ b_i F_{t-i+2}`, so the last digit weighs `F_2 = 1`.
//! The canonical representation of `n` is the greedy one: no two adjacent 1s
//! and no leading 0. The canonical representation of 0 is the empty word.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// A binary digit was outside `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitStringError {
    #[error("invalid binary digit {0:?}")]
    InvalidChar(char),
    #[error("invalid binary digit {0}")]
    InvalidDigit(u8),
}

/// A finite word over `{0, 1}`, most significant digit first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_digits(digits: Vec<u8>) -> Result<Self, BitStringError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 1) {
            return Err(BitStringError::InvalidDigit(d));
        }
        Ok(Self(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: bool) {
        self.0.push(u8::from(digit));
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&other.0);
        BitString(digits)
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> BitString {
        BitString(self.0.repeat(times))
    }

    /// The word `digit^times`.
    pub fn filled(digit: bool, times: usize) -> BitString {
        BitString(vec![u8::from(digit); times])
    }

    /// All words of length exactly `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(
            len < usize::BITS as usize,
            "word length {len} too large to enumerate"
        );
        (0usize..1 << len).map(move |bits| {
            BitString(
                (0..len)
                    .map(|i| ((bits >> (len - 1 - i)) & 1) as u8)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            f.write_str(if d == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = BitStringError;

    /// Parses ASCII `0`/`1`. The empty string and `ε` both denote the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(BitStringError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fib(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_0, F_1, …, F_{len-1}`.
pub fn fib_table(len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let next = match i {
            0 => BigUint::zero(),
            1 => BigUint::one(),
            _ => &out[i - 1] + &out[i - 2],
        };
        out.push(next);
    }
    out
}

/// The canonical (greedy Zeckendorf) representation `(n)_F`.
pub fn to_canonical(n: &BigUint) -> BitString {
    if n.is_zero() {
        return BitString::empty();
    }
    // Grow the table until F_{t+2} > n; the representation then has t digits.
    let mut fibs = fib_table(3);
    while fibs.last().unwrap() <= n {
        let len = fibs.len();
        let next = &fibs[len - 1] + &fibs[len - 2];
        fibs.push(next);
    }
    let t = fibs.len() - 3;
    let mut rest = n.clone();
    let mut digits = Vec::with_capacity(t);
    for i in 1..=t {
        let weight = &fibs[t - i + 2];
        if *weight <= rest {
            rest -= weight;
            digits.push(1);
        } else {
            digits.push(0);
        }
    }
    debug_assert!(rest.is_zero());
    BitString(digits)
}

pub fn to_canonical_u64(n: u64) -> BitString {
    to_canonical(&BigUint::from(n))
}

/// `[x]_F`: the value of an arbitrary binary word, leading zeros allowed.
pub fn value_of(x: &BitString) -> BigUint {
    // Horner-style: keep (value, value of the same word shifted one place).
    // Appending digit d maps (a, b) to (a + b + d, a + d).
    let (mut value, mut shifted) = (BigUint::zero(), BigUint::zero());
    for &d in x.digits() {
        let next_shifted = &value + d as u32;
        value = value + shifted + d as u32;
        shifted = next_shifted;
    }
    value
}

/// Membership in `C_F = ε + 1(0+01)*`.
pub fn is_canonical(x: &BitString) -> bool {
    let d = x.digits();
    if d.first() == Some(&0) {
        return false;
    }
    !d.windows(2).any(|w| w == [1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        // Independent loop over u64.
        let (mut a, mut b) = (0u64, 1u64);
        for n in 0..80 {
            assert_eq!(fib(n), BigUint::from(a), "F_{n}");
            (a, b) = (b, a + b);
        }
        assert_eq!(fib(10), BigUint::from(55u32));
        assert_eq!(fib_table(11)[10], BigUint::from(55u32));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(to_canonical_u64(43), bs("10010001"));
        assert_eq!(to_canonical_u64(0), BitString::empty());
        assert_eq!(to_canonical_u64(8), bs("10000"));
        assert_eq!(to_canonical_u64(1), bs("1"));
        assert_eq!(to_canonical_u64(4), bs("101"));
    }

    #[test]
    fn value_examples() {
        assert_eq!(value_of(&bs("0010001101")), BigUint::from(43u32));
        assert_eq!(value_of(&BitString::empty()), BigUint::zero());
        assert_eq!(value_of(&bs("11")), BigUint::from(3u32));
        assert_eq!(value_of(&bs("1001")), BigUint::from(6u32));
    }

    #[test]
    fn canonical_membership() {
        assert!(is_canonical(&bs("10010001")));
        assert!(is_canonical(&BitString::empty()));
        assert!(!is_canonical(&bs("011")));
        assert!(!is_canonical(&bs("0")));
        assert!(!is_canonical(&bs("110")));
        assert!(is_canonical(&bs("1")));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bs("ε"), BitString::empty());
        assert_eq!(bs(""), BitString::empty());
        assert_eq!(bs("0110").to_string(), "0110");
        assert_eq!(
            "012".parse::<BitString>(),
            Err(BitStringError::InvalidChar('2'))
        );
        assert_eq!(
            BitString::from_digits(vec![0, 3]),
            Err(BitStringError::InvalidDigit(3))
        );
    }

    #[test]
    fn round_trip_and_injectivity() {
        let mut seen = std::collections::HashSet::new();
        for n in 0..=10_000u64 {
            let x = to_canonical_u64(n);
            assert!(is_canonical(&x), "{n}");
            assert_eq!(value_of(&x), BigUint::from(n));
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn greedy_bound() {
        for n in 1..=10_000u64 {
            let t = to_canonical_u64(n).len();
            let n = BigUint::from(n);
            assert!(fib(t + 1) <= n && n < fib(t + 2));
        }
    }

    #[test]
    fn padding_is_neutral() {
        for len in 0..=12 {
            for x in BitString::all_of_length(len) {
                let base = value_of(&x);
                for k in 0..=5 {
                    assert_eq!(value_of(&BitString::filled(false, k).concat(&x)), base);
                }
            }
        }
    }

    #[test]
    fn canonical_words_enumerate_an_interval() {
        // The canonical words of length t are exactly the values in [F_{t+1}, F_{t+2}).
        for t in 1..=14 {
            let mut values: Vec<_> = BitString::all_of_length(t)
                .filter(is_canonical)
                .map(|x| value_of(&x))
                .collect();
            values.sort();
            let expected: Vec<_> = num_iter(fib(t + 1), fib(t + 2));
            assert_eq!(values, expected, "t = {t}");
        }
    }

    fn num_iter(lo: BigUint, hi: BigUint) -> Vec<BigUint> {
        let mut out = Vec::new();
        let mut cur = lo;
        while cur < hi {
            out.push(cur.clone());
            cur += 1u32;
        }
        out
    }
}
