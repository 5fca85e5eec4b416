//! Difference indicators and the absorption-minimal reduced offset.
//!
//! Reducing an OFF-cube `Z` on an ON-minterm `p` keeps only the literals of
//! `Z` that complement `p`. Every such reduced cube is fully described by
//! the positions it keeps, so it is carried as a single n-bit string (a
//! difference indicator) with 1 marking a kept literal. Absorption between
//! reduced cubes becomes a subset test on 1-bits.

use std::fmt;

use crate::bitcube::{BitVec, Cube};
use crate::error::{Error, Result};

/// One reduced OFF-cube, as the set of literal positions it keeps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffIndicator(BitVec);

impl DiffIndicator {
    pub fn new(value: BitVec) -> Self {
        DiffIndicator(value)
    }

    pub fn value(&self) -> &BitVec {
        &self.0
    }

    pub fn into_inner(self) -> BitVec {
        self.0
    }

    pub fn width(&self) -> usize {
        self.0.width()
    }
}

impl fmt::Display for DiffIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for DiffIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DI({})", self.0)
    }
}

/// Counters for one call of [`DiSet::reform`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReformStep {
    /// Elements examined before the scan finished.
    pub comparisons: usize,
    /// Indicators eliminated: removed elements, or 1 when the new one was absorbed.
    pub absorptions: usize,
    /// The new indicator was absorbed and the set is unchanged.
    pub absorbed: bool,
}

/// Running totals over a whole reduced-offset construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SdmStats {
    pub off_cubes: usize,
    pub comparisons: usize,
    pub absorptions: usize,
}

impl SdmStats {
    /// Mean comparisons per OFF-cube.
    pub fn average_comparisons(&self) -> f64 {
        if self.off_cubes == 0 {
            0.0
        } else {
            self.comparisons as f64 / self.off_cubes as f64
        }
    }
}

/// Absorption-minimal set of difference indicators, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiSet {
    width: usize,
    elements: Vec<DiffIndicator>,
    stats: SdmStats,
}

impl DiSet {
    /// The starting set `{11...1}`, which the first real indicator absorbs.
    pub fn seeded(width: usize) -> Self {
        DiSet {
            width,
            elements: vec![DiffIndicator(BitVec::ones(width))],
            stats: SdmStats::default(),
        }
    }

    /// Wraps an existing list. Panics if the elements differ in width.
    pub fn from_elements(width: usize, elements: Vec<DiffIndicator>) -> Self {
        assert!(elements.iter().all(|d| d.width() == width));
        DiSet {
            width,
            elements,
            stats: SdmStats::default(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn elements(&self) -> &[DiffIndicator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stats(&self) -> SdmStats {
        self.stats
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DiffIndicator> {
        self.elements.iter()
    }

    /// Folds one indicator into the set.
    ///
    /// The scan runs from the most recently inserted element backwards. It
    /// stops as soon as an element absorbs `d`; otherwise every element that
    /// `d` absorbs is dropped and `d` is appended. Dropped slots are
    /// compacted before returning.
    pub fn reform(&mut self, d: DiffIndicator) -> ReformStep {
        assert_eq!(d.width(), self.width, "indicator width mismatch");
        let mut step = ReformStep::default();
        let mut doomed = Vec::new();
        for i in (0..self.elements.len()).rev() {
            step.comparisons += 1;
            let s = self.elements[i].value();
            let common = s & d.value();
            if &common == s {
                step.absorptions = 1;
                step.absorbed = true;
                break;
            } else if &common == d.value() {
                doomed.push(i);
            }
        }
        self.stats.off_cubes += 1;
        self.stats.comparisons += step.comparisons;
        if step.absorbed {
            // an absorbed indicator cannot also have absorbed an element
            debug_assert!(doomed.is_empty());
            self.stats.absorptions += 1;
            return step;
        }
        step.absorptions = doomed.len();
        self.stats.absorptions += doomed.len();
        if !doomed.is_empty() {
            let mut idx = 0;
            self.elements.retain(|_| {
                let keep = !doomed.contains(&idx);
                idx += 1;
                keep
            });
        }
        self.elements.push(d);
        step
    }
}

impl<'a> IntoIterator for &'a DiSet {
    type Item = &'a DiffIndicator;
    type IntoIter = std::slice::Iter<'a, DiffIndicator>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Difference indicator of the OFF-cube `z` relative to minterm `p`.
///
/// Bit i is 1 iff `z` specifies variable i with the value opposite to `p`.
/// For a minterm `z` this is exactly `p ^ z`.
pub fn generate_di(p: &BitVec, z: &Cube) -> Result<DiffIndicator> {
    if p.width() != z.width() {
        return Err(Error::WidthMismatch {
            left: p.width(),
            right: z.width(),
        });
    }
    let d = &(p ^ z.right()) & &z.care_mask();
    if d.is_zero() {
        return Err(Error::InconsistentFunction {
            minterm: p.to_string(),
            off_cube: z.to_string(),
        });
    }
    Ok(DiffIndicator(d))
}

/// Returns a copy of `set` with `d` folded in.
pub fn reform_sdm(set: &DiSet, d: DiffIndicator) -> DiSet {
    let mut next = set.clone();
    next.reform(d);
    next
}

/// One step of [`generate_sdm_traced`].
#[derive(Debug)]
pub struct SdmEvent<'a> {
    /// 1-based position of the OFF-cube.
    pub index: usize,
    pub indicator: &'a DiffIndicator,
    pub step: ReformStep,
    pub set: &'a DiSet,
}

/// Builds the absorption-minimal indicator set for `p` against `off`.
pub fn generate_sdm(p: &BitVec, off: &[Cube]) -> Result<DiSet> {
    generate_sdm_traced(p, off, |_| {})
}

/// Like [`generate_sdm`], reporting every reform step to `observer`.
pub fn generate_sdm_traced(
    p: &BitVec,
    off: &[Cube],
    mut observer: impl FnMut(SdmEvent<'_>),
) -> Result<DiSet> {
    if off.is_empty() {
        return Err(Error::EmptyOffset);
    }
    let mut set = DiSet::seeded(p.width());
    for (i, z) in off.iter().enumerate() {
        let d = generate_di(p, z)?;
        let step = set.reform(d.clone());
        observer(SdmEvent {
            index: i + 1,
            indicator: &d,
            step,
            set: &set,
        });
    }
    let bound = 2.5 * p.width() as f64;
    if set.len() as f64 > bound {
        log::debug!("w(S_DM) = {} exceeds 2.5n = {bound} for p = {p}", set.len());
    }
    Ok(set)
}

/// Reduces the OFF-cube `z` on minterm `p`, position by position: a literal
/// survives only when it is the complement of `p` at that position.
pub fn reduce_off_cube(p: &BitVec, z: &Cube) -> Cube {
    assert_eq!(p.width(), z.width());
    let n = p.width();
    let text: String = z
        .to_string()
        .chars()
        .enumerate()
        .map(|(pos, zc)| {
            let pc = if p.var(pos) { '1' } else { '0' };
            if zc != 'x' && zc != pc {
                zc
            } else {
                'x'
            }
        })
        .collect();
    debug_assert_eq!(text.len(), n);
    text.parse().expect("reduced cube text is well formed")
}

/// Expands an indicator back into its reduced cube.
pub fn derive_rc(p: &BitVec, d: &DiffIndicator) -> Cube {
    let not_d = !d.value();
    Cube::from_parts(p | &not_d, &!p | &not_d).expect("reduced cube is never empty")
}

/// Drops every cube contained in another one (first copy of a duplicate wins).
pub fn minimize_sr(cubes: &[Cube]) -> Vec<Cube> {
    let mut out: Vec<Cube> = Vec::with_capacity(cubes.len());
    for (i, c) in cubes.iter().enumerate() {
        let absorbed = cubes
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.contains(c) && (other != c || j < i));
        if !absorbed {
            out.push(c.clone());
        }
    }
    out
}
