use std::fmt;
use std::str::FromStr;

use super::BitVec;
use crate::error::{Error, Result};

/// A product term in positional-cube notation.
///
/// Each variable is a `(left, right)` bit pair: `01` is a positive literal,
/// `10` a negative literal and `11` a don't care. The empty pair `00` never
/// occurs inside a `Cube`; operations that can produce an empty cube return
/// `Option<Cube>` instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    left: BitVec,
    right: BitVec,
}

impl Cube {
    /// Builds a cube from its two bit strings, or `None` when some variable
    /// carries the empty pair.
    pub fn from_parts(left: BitVec, right: BitVec) -> Option<Cube> {
        assert_eq!(left.width(), right.width(), "cube halves differ in width");
        if (&left | &right) == BitVec::ones(left.width()) {
            Some(Cube { left, right })
        } else {
            None
        }
    }

    /// Cube with literals at the 1-bits of `care`, taking their values from
    /// `value`.
    pub fn from_care(care: &BitVec, value: &BitVec) -> Cube {
        let free = !care;
        Cube {
            left: &!value | &free,
            right: value | &free,
        }
    }

    /// The single-minterm cube `(~p, p)`.
    pub fn minterm(p: &BitVec) -> Cube {
        Cube {
            left: !p,
            right: p.clone(),
        }
    }

    pub fn universe(width: usize) -> Cube {
        Cube {
            left: BitVec::ones(width),
            right: BitVec::ones(width),
        }
    }

    pub fn width(&self) -> usize {
        self.left.width()
    }

    pub fn left(&self) -> &BitVec {
        &self.left
    }

    pub fn right(&self) -> &BitVec {
        &self.right
    }

    /// 1 at every position holding a literal.
    pub fn care_mask(&self) -> BitVec {
        &self.left ^ &self.right
    }

    /// The smallest minterm inside the cube (don't cares read as 0).
    pub fn min_minterm(&self) -> BitVec {
        self.right.and_not(&self.left)
    }

    pub fn literal_count(&self) -> usize {
        self.care_mask().count_ones()
    }

    pub fn dont_care_count(&self) -> usize {
        self.width() - self.literal_count()
    }

    pub fn is_minterm(&self) -> bool {
        self.literal_count() == self.width()
    }

    /// True iff every minterm of `other` lies in `self`.
    pub fn contains(&self, other: &Cube) -> bool {
        other.left.is_subset_of(&self.left) && other.right.is_subset_of(&self.right)
    }

    pub fn contains_minterm(&self, p: &BitVec) -> bool {
        // p lies in the cube iff no literal disagrees with it
        (&self.care_mask() & &(p ^ &self.right)).is_zero()
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        let both = &(&self.left & &other.left) | &(&self.right & &other.right);
        both == BitVec::ones(self.width())
    }

    pub fn intersection(&self, other: &Cube) -> Option<Cube> {
        Cube::from_parts(&self.left & &other.left, &self.right & &other.right)
    }

    /// Replaces the literal at numeric position `bit` with a don't care.
    pub fn raise(&self, bit: usize) -> Cube {
        let mut c = self.clone();
        c.left.set_bit(bit, true);
        c.right.set_bit(bit, true);
        c
    }

    /// Fixes numeric position `bit` to `value`.
    pub fn restrict(&self, bit: usize, value: bool) -> Cube {
        let mut c = self.clone();
        c.left.set_bit(bit, !value);
        c.right.set_bit(bit, value);
        c
    }

    /// `self` minus `other` as a list of pairwise disjoint cubes.
    pub fn sharp(&self, other: &Cube) -> Vec<Cube> {
        if !self.intersects(other) {
            return vec![self.clone()];
        }
        let split = other.care_mask().and_not(&self.care_mask());
        let mut pieces = Vec::with_capacity(split.count_ones());
        let mut base = self.clone();
        // walk the split variables left to right
        let mut bits: Vec<usize> = split.ones_iter().collect();
        bits.reverse();
        for bit in bits {
            let v = other.right.bit(bit);
            pieces.push(base.restrict(bit, !v));
            base = base.restrict(bit, v);
        }
        pieces
    }

    /// Minterms of the cube in ascending numeric order.
    ///
    /// Panics if the cube has more than 63 don't cares.
    pub fn minterms(&self) -> impl Iterator<Item = BitVec> + '_ {
        let free: Vec<usize> = (!&self.care_mask()).ones_iter().collect();
        assert!(free.len() < 64, "cube too large to enumerate");
        let base = self.min_minterm();
        (0u64..1u64 << free.len()).map(move |k| {
            let mut m = base.clone();
            for (j, &bit) in free.iter().enumerate() {
                if (k >> j) & 1 == 1 {
                    m.set_bit(bit, true);
                }
            }
            m
        })
    }

    /// Number of minterms, saturating at `u64::MAX`.
    pub fn volume(&self) -> u64 {
        let k = self.dont_care_count();
        if k >= 64 {
            u64::MAX
        } else {
            1u64 << k
        }
    }

    /// Text with `-` for don't cares, as used in PLA files.
    pub fn to_pla_string(&self) -> String {
        self.chars('-')
    }

    fn chars(&self, dc: char) -> String {
        let n = self.width();
        (0..n)
            .map(|pos| {
                let bit = n - 1 - pos;
                match (self.left.bit(bit), self.right.bit(bit)) {
                    (false, true) => '1',
                    (true, false) => '0',
                    _ => dc,
                }
            })
            .collect()
    }
}

/// Complement of a cover as disjoint cubes.
pub fn complement(cover: &[Cube], width: usize) -> Vec<Cube> {
    let mut rest = vec![Cube::universe(width)];
    for c in cover {
        rest = rest.iter().flat_map(|r| r.sharp(c)).collect();
        if rest.is_empty() {
            break;
        }
    }
    rest
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.chars('x'))
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

impl FromStr for Cube {
    type Err = Error;

    /// Accepts `0`, `1`, `x`/`X` and `-`.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyText);
        }
        let n = s.chars().count();
        let mut left = BitVec::zeros(n);
        let mut right = BitVec::zeros(n);
        for (pos, ch) in s.chars().enumerate() {
            let bit = n - 1 - pos;
            let (l, r) = match ch {
                '0' => (true, false),
                '1' => (false, true),
                'x' | 'X' | '-' => (true, true),
                _ => {
                    return Err(Error::InvalidChar {
                        text: s.to_string(),
                        pos,
                        ch,
                    })
                }
            };
            left.set_bit(bit, l);
            right.set_bit(bit, r);
        }
        Ok(Cube { left, right })
    }
}
