//! Direct-cover minimization: pick the first uncovered ON-minterm, generate
//! every prime implicant containing it, commit the best one, repeat.

use std::fmt;
use std::time::{Duration, Instant};

use crate::bitcube::{BitVec, Cube};
use crate::error::{Error, Result};
use crate::function::LogicFunction;
use crate::pi_gen::generate_spi_with_sdm;

/// Upper bound on the number of indexed ON-minterms.
pub const DEFAULT_ON_LIMIT: usize = 1 << 22;

/// Bit `i` is set iff the `i`-th indexed ON-minterm is selected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverageMask(BitVec);

impl CoverageMask {
    pub fn empty(len: usize) -> Self {
        CoverageMask(BitVec::zeros(len))
    }

    pub fn full(len: usize) -> Self {
        CoverageMask(BitVec::ones(len))
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = BitVec::zeros(len);
        for i in indices {
            bits.set_bit(i, true);
        }
        CoverageMask(bits)
    }

    pub fn len(&self) -> usize {
        self.0.width()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.bit(i)
    }

    pub fn count(&self) -> usize {
        self.0.count_ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.lowest_one()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones_iter()
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn and(&self, other: &CoverageMask) -> CoverageMask {
        CoverageMask(&self.0 & &other.0)
    }

    pub fn or(&self, other: &CoverageMask) -> CoverageMask {
        CoverageMask(&self.0 | &other.0)
    }

    pub fn xor(&self, other: &CoverageMask) -> CoverageMask {
        CoverageMask(&self.0 ^ &other.0)
    }

    pub fn minus(&self, other: &CoverageMask) -> CoverageMask {
        CoverageMask(self.0.and_not(&other.0))
    }

    pub fn is_subset_of(&self, other: &CoverageMask) -> bool {
        self.0.is_subset_of(&other.0)
    }
}

impl fmt::Debug for CoverageMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<usize> = self.indices().collect();
        write!(f, "CoverageMask({}; {:?})", self.len(), idx)
    }
}

/// Which of `on_minterms` lie in `pi`.
pub fn coverage_mask(pi: &Cube, on_minterms: &[BitVec]) -> CoverageMask {
    CoverageMask::from_indices(
        on_minterms.len(),
        on_minterms
            .iter()
            .enumerate()
            .filter(|(_, m)| pi.contains_minterm(m))
            .map(|(i, _)| i),
    )
}

/// Picks the candidate to commit and returns its index.
///
/// A candidate whose uncovered coverage strictly contains every other
/// candidate's wins outright. Otherwise the largest uncovered coverage wins,
/// with ties going to the smallest cube text.
pub fn select_epi(candidates: &[(Cube, CoverageMask)], uncovered: &CoverageMask) -> usize {
    assert!(
        !candidates.is_empty(),
        "select_epi needs at least one candidate"
    );
    let live: Vec<CoverageMask> = candidates.iter().map(|(_, m)| m.and(uncovered)).collect();
    if let Some(i) = dominant(&live) {
        return i;
    }
    let mut best = 0;
    for i in 1..candidates.len() {
        let (ci, cb) = (live[i].count(), live[best].count());
        if ci > cb || (ci == cb && candidates[i].0.to_string() < candidates[best].0.to_string()) {
            best = i;
        }
    }
    best
}

/// Index of the mask that strictly contains all others, if any.
pub(crate) fn dominant(masks: &[CoverageMask]) -> Option<usize> {
    if masks.len() == 1 {
        return Some(0);
    }
    (0..masks.len()).find(|&i| {
        masks
            .iter()
            .enumerate()
            .all(|(j, m)| j == i || (m.is_subset_of(&masks[i]) && *m != masks[i]))
    })
}

#[derive(Debug, Clone)]
pub struct CoverOptions {
    /// Drop cubes made redundant by later commits.
    pub irredundant: bool,
    pub on_limit: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            irredundant: false,
            on_limit: DEFAULT_ON_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoverStats {
    pub iterations: usize,
    pub pi_sets: usize,
    pub elapsed: Duration,
    /// Size of the indicator set built for each origin minterm.
    pub sdm_sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CoverResult {
    pub cubes: Vec<Cube>,
    /// ON-minterm coverage of each cube, parallel to `cubes`.
    pub coverage: Vec<CoverageMask>,
    pub on_minterms: Vec<BitVec>,
    pub stats: CoverStats,
}

pub fn direct_cover(f: &LogicFunction) -> Result<CoverResult> {
    direct_cover_with(f, &CoverOptions::default())
}

pub fn direct_cover_with(f: &LogicFunction, opts: &CoverOptions) -> Result<CoverResult> {
    let start = Instant::now();
    let on = f.on_minterms(opts.on_limit)?;
    if on.is_empty() {
        return Err(Error::EmptyOnset);
    }
    let mut uncovered = CoverageMask::full(on.len());
    let mut cubes = Vec::new();
    let mut coverage = Vec::new();
    let mut stats = CoverStats::default();

    while let Some(origin) = uncovered.first() {
        let (pis, sdm) = generate_spi_with_sdm(&on[origin], &f.off)?;
        stats.pi_sets += 1;
        stats.sdm_sizes.push(sdm.map_or(0, |s| s.len()));
        let candidates: Vec<(Cube, CoverageMask)> = pis
            .into_iter()
            .map(|pi| {
                let mask = coverage_mask(&pi, &on);
                (pi, mask)
            })
            .collect();
        let pick = select_epi(&candidates, &uncovered);
        let (cube, mask) = candidates
            .into_iter()
            .nth(pick)
            .expect("picked index is valid");
        let before = uncovered.count();
        uncovered = uncovered.minus(&mask);
        debug_assert!(uncovered.count() < before, "commit must cover the origin");
        log::trace!("commit {cube} covering {} new", before - uncovered.count());
        cubes.push(cube);
        coverage.push(mask);
        stats.iterations += 1;
    }

    if opts.irredundant {
        drop_redundant(&mut cubes, &mut coverage);
    }
    stats.elapsed = start.elapsed();
    Ok(CoverResult {
        cubes,
        coverage,
        on_minterms: on,
        stats,
    })
}

/// Removes, newest first, every cube whose ON-minterms the rest still cover.
fn drop_redundant(cubes: &mut Vec<Cube>, coverage: &mut Vec<CoverageMask>) {
    let mut i = cubes.len();
    while i > 0 {
        i -= 1;
        let len = coverage[i].len();
        let others = coverage
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(CoverageMask::empty(len), |acc, (_, m)| acc.or(m));
        if coverage[i].is_subset_of(&others) {
            cubes.remove(i);
            coverage.remove(i);
        }
    }
}

/// Outcome of [`verify_cover`]; empty lists mean the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverReport {
    /// Pieces of the ON-set left uncovered, as disjoint cubes.
    pub uncovered: Vec<Cube>,
    /// `(cover cube, OFF-cube)` pairs that intersect.
    pub off_hits: Vec<(Cube, Cube)>,
    /// `(cover cube, text position)` where raising the literal stays clear
    /// of the OFF-set.
    pub non_prime: Vec<(Cube, usize)>,
}

impl CoverReport {
    pub fn is_ok(&self) -> bool {
        self.uncovered.is_empty() && self.off_hits.is_empty() && self.non_prime.is_empty()
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(f, "coverage: {}", verdict(self.uncovered.is_empty()))?;
        for c in &self.uncovered {
            writeln!(f, "  uncovered {c}")?;
        }
        writeln!(f, "off-set disjoint: {}", verdict(self.off_hits.is_empty()))?;
        for (c, z) in &self.off_hits {
            writeln!(f, "  {c} meets off-cube {z}")?;
        }
        writeln!(f, "primality: {}", verdict(self.non_prime.is_empty()))?;
        for (c, pos) in &self.non_prime {
            writeln!(f, "  {c} can drop the literal at position {pos}")?;
        }
        Ok(())
    }
}

/// Checks coverage of ON, disjointness from OFF and primality of each cube.
pub fn verify_cover(cubes: &[Cube], f: &LogicFunction) -> CoverReport {
    let mut report = CoverReport::default();
    for on in &f.on {
        let mut rest = vec![on.clone()];
        for c in cubes {
            rest = rest.iter().flat_map(|r| r.sharp(c)).collect();
            if rest.is_empty() {
                break;
            }
        }
        for piece in rest {
            if !report.uncovered.iter().any(|u| u.contains(&piece)) {
                report.uncovered.push(piece);
            }
        }
    }
    for c in cubes {
        let hits: Vec<&Cube> = f.off.iter().filter(|z| c.intersects(z)).collect();
        let clean = hits.is_empty();
        report
            .off_hits
            .extend(hits.into_iter().map(|z| (c.clone(), z.clone())));
        if !clean {
            continue;
        }
        let n = c.width();
        for bit in c.care_mask().ones_iter() {
            let raised = c.raise(bit);
            if !f.off.iter().any(|z| raised.intersects(z)) {
                report.non_prime.push((c.clone(), n - 1 - bit));
            }
        }
    }
    report
}
