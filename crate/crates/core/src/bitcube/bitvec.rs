use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// Fixed-width bit string.
///
/// Width 0 is allowed (an empty coverage mask, for instance); variables
/// always have width at least 1.
///
/// Text form is most-significant bit first, so character `i` of a string of
/// width `n` is bit `n - 1 - i`. Storage is little-endian by word and every
/// bit at or above `width` is kept at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    width: usize,
    words: Words,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(WORD).max(1)
}

impl BitVec {
    pub fn zeros(width: usize) -> Self {
        BitVec {
            width,
            words: SmallVec::from_elem(0, word_count(width)),
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut v = BitVec::zeros(width);
        v.words.iter_mut().for_each(|w| *w = u64::MAX);
        v.trim();
        v
    }

    /// Builds a vector of `width` bits from the low bits of `value`.
    pub fn from_u64(width: usize, value: u64) -> Self {
        let mut v = BitVec::zeros(width);
        v.words[0] = value;
        v.trim();
        v
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The value as an integer, when it fits in one word.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bit by numeric position (0 is the rightmost character).
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.width,
            "bit {i} out of range for width {}",
            self.width
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize, value: bool) {
        assert!(
            i < self.width,
            "bit {i} out of range for width {}",
            self.width
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn with_bit(mut self, i: usize, value: bool) -> Self {
        self.set_bit(i, value);
        self
    }

    /// Bit by text position (0 is the leftmost character).
    pub fn var(&self, pos: usize) -> bool {
        self.bit(self.width - 1 - pos)
    }

    /// True iff every 1-bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn and_not(&self, other: &BitVec) -> BitVec {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Numeric position of the least significant 1-bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * WORD + self.words[i].trailing_zeros() as usize)
    }

    /// Splits off the least significant 1-bit using the decrement identity:
    /// `rest = (a - 1) & a`, `one_hot = rest ^ a`.
    pub fn split_lowest_one(&self) -> Option<(BitVec, BitVec)> {
        let first = self.words.iter().position(|&w| w != 0)?;
        let mut minus_one = self.words.clone();
        // borrow through the zero words below the first set word
        for w in &mut minus_one[..first] {
            *w = u64::MAX;
        }
        minus_one[first] -= 1;
        let rest = BitVec {
            width: self.width,
            words: minus_one
                .iter()
                .zip(&self.words)
                .map(|(m, a)| m & a)
                .collect(),
        };
        let one_hot = &rest ^ self;
        Some((one_hot, rest))
    }

    /// Numeric positions of the 1-bits, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    return None;
                }
                let tz = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    fn check_width(&self, other: &BitVec) {
        assert_eq!(
            self.width, other.width,
            "bit vector width mismatch: {} vs {}",
            self.width, other.width
        );
    }

    fn zip_with(&self, other: &BitVec, f: impl Fn(u64, u64) -> u64) -> BitVec {
        self.check_width(other);
        BitVec {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if self.width == 0 {
            self.words[0] = 0;
        } else if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }
}

/// Subset test on 1-bits: every 1 of `a` is a 1 of `b`.
pub fn subset_ones(a: &BitVec, b: &BitVec) -> Result<bool> {
    if a.width != b.width {
        return Err(Error::WidthMismatch {
            left: a.width,
            right: b.width,
        });
    }
    Ok(a.is_subset_of(b))
}

/// Splits `a` into its lowest 1-bit and the remaining bits.
pub fn split_lowest_one(a: &BitVec) -> Result<(BitVec, BitVec)> {
    a.split_lowest_one().ok_or(Error::ZeroVector)
}

impl BitAnd for &BitVec {
    type Output = BitVec;
    fn bitand(self, rhs: &BitVec) -> BitVec {
        self.zip_with(rhs, |a, b| a & b)
    }
}

impl BitOr for &BitVec {
    type Output = BitVec;
    fn bitor(self, rhs: &BitVec) -> BitVec {
        self.zip_with(rhs, |a, b| a | b)
    }
}

impl BitXor for &BitVec {
    type Output = BitVec;
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        self.zip_with(rhs, |a, b| a ^ b)
    }
}

impl Not for &BitVec {
    type Output = BitVec;
    fn not(self) -> BitVec {
        let mut v = BitVec {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.trim();
        v
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BitVec {
            type Output = BitVec;
            fn $f(self, rhs: BitVec) -> BitVec {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&BitVec> for BitVec {
            type Output = BitVec;
            fn $f(self, rhs: &BitVec) -> BitVec {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(BitAnd, bitand);
forward_owned!(BitOr, bitor);
forward_owned!(BitXor, bitxor);

impl Not for BitVec {
    type Output = BitVec;
    fn not(self) -> BitVec {
        !&self
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.width)
            .map(|pos| if self.var(pos) { '1' } else { '0' })
            .collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyText);
        }
        let width = s.chars().count();
        let mut v = BitVec::zeros(width);
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set_bit(width - 1 - pos, true),
                _ => {
                    return Err(Error::InvalidChar {
                        text: s.to_string(),
                        pos,
                        ch,
                    })
                }
            }
        }
        Ok(v)
    }
}
