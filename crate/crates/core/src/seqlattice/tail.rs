//! Almost-equality classes of eventually periodic binary sequences.
//!
//! Positions are 1-based. A class is stored as its residue word: `bits[i]` is
//! the bit carried by every sufficiently large position `n` with
//! `(n - 1) % p == i`, so residue `p` (i.e. `0 mod p`) lives in the last slot.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Smallest `q` dividing `word.len()` such that the word is `q`-periodic.
fn minimal_period(word: &[bool]) -> usize {
    let p = word.len();
    (1..=p)
        .filter(|q| p.is_multiple_of(*q))
        .find(|&q| (q..p).all(|i| word[i] == word[i - q]))
        .unwrap_or(p)
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidBit(other)),
        })
        .collect()
}

fn fmt_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A finite preperiod followed by an infinitely repeated period word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSequence {
    preperiod: Vec<bool>,
    period: Vec<bool>,
}

impl EventuallyPeriodicSequence {
    pub fn new(preperiod: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { preperiod, period })
    }

    /// Parses bit strings such as `("1", "0101")`.
    pub fn parse(preperiod: &str, period: &str) -> Result<Self> {
        Self::new(parse_bits(preperiod)?, parse_bits(period)?)
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    /// Bit at the 1-based `position`.
    pub fn bit_at(&self, position: usize) -> bool {
        assert!(position >= 1, "positions are 1-based");
        let s = self.preperiod.len();
        if position <= s {
            self.preperiod[position - 1]
        } else {
            self.period[(position - s - 1) % self.period.len()]
        }
    }

    /// The first `len` bits (positions `1..=len`).
    pub fn truncate(&self, len: usize) -> Vec<bool> {
        (1..=len).map(|n| self.bit_at(n)).collect()
    }

    /// Same sequence with minimal period and minimal preperiod.
    pub fn canonical(&self) -> Self {
        let q = minimal_period(&self.period);
        let mut period = self.period[..q].to_vec();
        let mut preperiod = self.preperiod.clone();
        while let Some(&last) = preperiod.last() {
            if last != period[q - 1] {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Self { preperiod, period }
    }

    /// The almost-equality class; the preperiod does not survive.
    pub fn class(&self) -> TailClass {
        let p = self.period.len();
        let s = self.preperiod.len() as i64;
        let residues = (0..p as i64)
            .map(|i| self.period[(i - s).rem_euclid(p as i64) as usize])
            .collect();
        TailClass::from_residue_word(residues).expect("period is nonempty")
    }
}

/// An element of the Boolean algebra of almost-equal binary sequences,
/// restricted to eventually periodic representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TailClass {
    bits: Vec<bool>,
}

impl TailClass {
    /// Builds the class from any residue word, reducing to the minimal period.
    pub fn from_residue_word(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let q = minimal_period(&bits);
        let mut bits = bits;
        bits.truncate(q);
        Ok(Self { bits })
    }

    pub fn zero() -> Self {
        Self { bits: vec![false] }
    }

    pub fn one() -> Self {
        Self { bits: vec![true] }
    }

    /// `sq(n)`: ones exactly at positions `n, 2n, 3n, ...`.
    pub fn sq(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut bits = vec![false; n];
        bits[n - 1] = true;
        Ok(Self { bits })
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn residue_word(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == [false]
    }

    pub fn is_one(&self) -> bool {
        self.bits == [true]
    }

    /// Bit of the purely periodic representative at the 1-based `position`.
    pub fn bit_at(&self, position: usize) -> bool {
        assert!(position >= 1, "positions are 1-based");
        self.bits[(position - 1) % self.bits.len()]
    }

    fn lifted(&self, p: usize) -> impl Iterator<Item = bool> + '_ {
        (0..p).map(move |i| self.bits[i % self.bits.len()])
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let p = lcm(self.period(), other.period());
        let bits = self.lifted(p).zip(other.lifted(p)).map(|(a, b)| op(a, b)).collect();
        Self::from_residue_word(bits).expect("lcm of nonzero periods")
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn neg(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// `self <= other`, i.e. `other ∨ self == other`.
    pub fn leq(&self, other: &Self) -> bool {
        let p = lcm(self.period(), other.period());
        self.lifted(p).zip(other.lifted(p)).all(|(b, a)| !b || a)
    }

    /// Prepends `m` zeros for `m >= 0`, deletes `-m` leading entries otherwise.
    pub fn shift(&self, m: i64) -> Self {
        let p = self.bits.len() as i64;
        let bits = (0..p).map(|i| self.bits[(i - m).rem_euclid(p) as usize]).collect();
        Self::from_residue_word(bits).expect("nonempty")
    }

    /// 1-based position of the `n`-th one (`n >= 1`) of the periodic
    /// representative, or `None` for the zero class.
    pub fn nth_one(&self, n: usize) -> Option<usize> {
        assert!(n >= 1);
        let offsets: Vec<usize> = (0..self.bits.len()).filter(|&i| self.bits[i]).map(|i| i + 1).collect();
        if offsets.is_empty() {
            return None;
        }
        let k = offsets.len();
        Some((n - 1) / k * self.bits.len() + offsets[(n - 1) % k])
    }
}

impl Ord for TailClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.period()
            .cmp(&other.period())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for TailClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TailClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};w={}", self.period(), fmt_bits(&self.bits))
    }
}

impl FromStr for TailClass {
    type Err = Error;

    /// Accepts `p=K;w=b1..bK`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected 'p=K;w=bits', got {s:?}"));
        let (p_part, w_part) = s.trim().split_once(';').ok_or_else(bad)?;
        let p: usize = p_part
            .trim()
            .strip_prefix("p=")
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let bits = parse_bits(w_part.trim().strip_prefix("w=").ok_or_else(bad)?)?;
        if bits.len() != p {
            return Err(Error::Parse(format!(
                "declared period {p} but word has {} bits",
                bits.len()
            )));
        }
        Self::from_residue_word(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize) -> TailClass {
        TailClass::sq(n).unwrap()
    }

    fn class(s: &str) -> TailClass {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_drops_prefix() {
        let c = |pre, per| EventuallyPeriodicSequence::parse(pre, per).unwrap().class();
        assert_eq!(c("", "10"), class("p=2;w=10"));
        assert_eq!(c("1", "0101"), class("p=2;w=10"));
        assert_eq!(c("", "1111"), TailClass::one());
        assert_eq!(EventuallyPeriodicSequence::parse("", ""), Err(Error::EmptyPeriod));
    }

    #[test]
    fn canonical_sequence_is_minimal() {
        let s = EventuallyPeriodicSequence::parse("1101", "0101").unwrap();
        let c = s.canonical();
        assert_eq!(c.period(), &[true, false]);
        assert_eq!(c.preperiod(), &[true]);
        for n in 1..40 {
            assert_eq!(s.bit_at(n), c.bit_at(n));
        }
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(sq(2).meet(&sq(3)), sq(6));
        assert_eq!(sq(6).to_string(), "p=6;w=000001");
        assert_eq!(class("p=2;w=10").join(&class("p=2;w=01")), TailClass::one());
        assert_eq!(sq(2).neg(), class("p=2;w=10"));
    }

    #[test]
    fn order_examples() {
        assert!(sq(4).leq(&sq(2)));
        assert!(!sq(2).leq(&sq(3)));
        assert!(TailClass::zero().leq(&sq(5)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(sq(2).shift(1), class("p=2;w=10"));
        assert_eq!(sq(7).shift(0), sq(7));
        assert_eq!(sq(3).shift(5).shift(-5), sq(3));
    }

    #[test]
    fn sq_examples() {
        assert_eq!(sq(1), TailClass::one());
        assert_eq!(sq(2), class("p=2;w=01"));
        assert_eq!(TailClass::sq(0), Err(Error::ZeroPeriod));
    }

    #[test]
    fn nth_one_positions() {
        assert_eq!(sq(8).nth_one(3), Some(24));
        assert_eq!(class("p=3;w=110").nth_one(3), Some(4));
        assert_eq!(TailClass::zero().nth_one(1), None);
    }

    #[test]
    fn parse_rejects_mismatch() {
        assert!("p=3;w=01".parse::<TailClass>().is_err());
        assert!("p=2;w=0x".parse::<TailClass>().is_err());
        assert_eq!(class("p=4;w=0101"), sq(2));
    }
}
