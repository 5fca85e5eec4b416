//! Multiple-output minimization with tagged minterms.
//!
//! Output `j` is bit `j` of every tag, so a tag prints MSB-first in the same
//! column order as a PLA output part: the leftmost column is output `m-1`.
//! Each origin minterm is minimized as a single-output function whose OFF-set
//! is every minterm where some output of its tag is 0. When no candidate
//! prime dominates, candidates are ranked by what they leave behind: the
//! minterms a candidate strands are scored by the literal count of their own
//! best prime, and the cheapest candidate wins.

use std::fmt;

use crate::bitcube::{BitVec, Cube};
use crate::cover::{coverage_mask, direct_cover, dominant, CoverageMask};
use crate::error::{Error, Result};
use crate::function::LogicFunction;
use crate::pi_gen::generate_spi_with_sdm;
use crate::reduced_offset::DiSet;

pub const MULTI_MAX_INPUTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputValue {
    Zero,
    One,
    #[default]
    DontCare,
}

/// Dense truth table with `m` outputs. Unlisted cells are don't cares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiFunction {
    pub name: String,
    inputs: usize,
    outputs: usize,
    values: Vec<OutputValue>,
}

impl MultiFunction {
    pub fn new(inputs: usize, outputs: usize) -> Result<Self> {
        if inputs > MULTI_MAX_INPUTS {
            return Err(Error::TooLarge {
                what: "multiple-output truth table inputs",
                n: inputs,
                limit: MULTI_MAX_INPUTS,
            });
        }
        Ok(MultiFunction {
            name: String::new(),
            inputs,
            outputs,
            values: vec![OutputValue::DontCare; outputs << inputs],
        })
    }

    /// Rows of `"<inputs> <outputs>"` text, outputs in column order
    /// (leftmost is output `m-1`) using `0`, `1` and `-`.
    pub fn from_table(inputs: usize, outputs: usize, rows: &[&str]) -> Result<Self> {
        let mut f = MultiFunction::new(inputs, outputs)?;
        for row in rows {
            let mut parts = row.split_whitespace();
            let (Some(ins), Some(outs), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::InvalidChar {
                    text: row.to_string(),
                    pos: 0,
                    ch: ' ',
                });
            };
            let m: BitVec = ins.parse()?;
            if m.width() != inputs || outs.chars().count() != outputs {
                return Err(Error::WidthMismatch {
                    left: inputs + outputs,
                    right: m.width() + outs.chars().count(),
                });
            }
            let row_index = m.to_u64().expect("bounded width") as usize;
            for (col, ch) in outs.chars().enumerate() {
                let v = match ch {
                    '0' => OutputValue::Zero,
                    '1' => OutputValue::One,
                    '-' => OutputValue::DontCare,
                    _ => {
                        return Err(Error::InvalidChar {
                            text: outs.to_string(),
                            pos: col,
                            ch,
                        })
                    }
                };
                f.set(row_index, outputs - 1 - col, v)?;
            }
        }
        Ok(f)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> usize {
        1 << self.inputs
    }

    pub fn get(&self, minterm: usize, output: usize) -> OutputValue {
        self.values[minterm * self.outputs + output]
    }

    /// Assigns one cell. A don't care never overrides a specified value, and
    /// specifying both 0 and 1 is an error.
    pub fn set(&mut self, minterm: usize, output: usize, v: OutputValue) -> Result<()> {
        let cell = &mut self.values[minterm * self.outputs + output];
        match (*cell, v) {
            (_, OutputValue::DontCare) => {}
            (OutputValue::DontCare, _) => *cell = v,
            (old, new) if old == new => {}
            _ => {
                return Err(Error::ConflictingOutput {
                    minterm: BitVec::from_u64(self.inputs, minterm as u64).to_string(),
                    output,
                })
            }
        }
        Ok(())
    }

    fn outputs_with(&self, minterm: usize, v: OutputValue) -> BitVec {
        let mut tag = BitVec::zeros(self.outputs);
        for j in 0..self.outputs {
            if self.get(minterm, j) == v {
                tag.set_bit(j, true);
            }
        }
        tag
    }

    /// Output `j` as a single-output function over minterm cubes.
    pub fn output_function(&self, j: usize) -> Result<LogicFunction> {
        let (mut on, mut off, mut dc) = (Vec::new(), Vec::new(), Vec::new());
        for r in 0..self.rows() {
            let c = Cube::minterm(&BitVec::from_u64(self.inputs, r as u64));
            match self.get(r, j) {
                OutputValue::One => on.push(c),
                OutputValue::Zero => off.push(c),
                OutputValue::DontCare => dc.push(c),
            }
        }
        LogicFunction::new(self.inputs, on, off, dc)
    }
}

/// A minterm together with the outputs it makes true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedMinterm {
    pub minterm: BitVec,
    pub tag: BitVec,
    /// Outputs left unspecified at this minterm.
    pub dc: BitVec,
}

impl TaggedMinterm {
    pub fn weight(&self) -> usize {
        self.tag.count_ones()
    }
}

impl fmt::Display for TaggedMinterm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.minterm, TagSuffix(&self.tag))
    }
}

/// A cube shared by every output in its tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedCube {
    pub cube: Cube,
    pub tag: BitVec,
}

impl TaggedCube {
    /// PLA cube line: inputs with `-`, then the tag in column order.
    pub fn to_pla_line(&self) -> String {
        format!("{} {}", self.cube.to_pla_string(), self.tag)
    }
}

impl fmt::Display for TaggedCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.cube, TagSuffix(&self.tag))
    }
}

/// `_0` or `_{2,0}`, outputs listed high to low.
struct TagSuffix<'a>(&'a BitVec);

impl fmt::Display for TagSuffix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut outs: Vec<String> = self.0.ones_iter().map(|j| j.to_string()).collect();
        outs.reverse();
        if outs.len() == 1 {
            write!(f, "_{}", outs[0])
        } else {
            write!(f, "_{{{}}}", outs.join(","))
        }
    }
}

/// Minterms with at least one true output, lightest tag first, then by value.
pub fn build_tagged(f: &MultiFunction) -> Vec<TaggedMinterm> {
    let mut out: Vec<TaggedMinterm> = (0..f.rows())
        .filter_map(|r| {
            let tag = f.outputs_with(r, OutputValue::One);
            (!tag.is_zero()).then(|| TaggedMinterm {
                minterm: BitVec::from_u64(f.inputs, r as u64),
                tag,
                dc: f.outputs_with(r, OutputValue::DontCare),
            })
        })
        .collect();
    out.sort_by(|a, b| {
        a.weight()
            .cmp(&b.weight())
            .then_with(|| a.minterm.cmp(&b.minterm))
    });
    out
}

/// Minterms where the AND of the tagged outputs is 0, ascending. Don't-care
/// cells count as 1.
pub fn subfunction_off(tag: &BitVec, f: &MultiFunction) -> Vec<Cube> {
    assert!(!tag.is_zero(), "sub-function tag must be nonempty");
    (0..f.rows())
        .filter(|&r| tag.ones_iter().any(|j| f.get(r, j) == OutputValue::Zero))
        .map(|r| Cube::minterm(&BitVec::from_u64(f.inputs, r as u64)))
        .collect()
}

/// Minterms covered by exactly one of the two candidates.
pub fn neighbors(a: &CoverageMask, b: &CoverageMask) -> CoverageMask {
    a.xor(b)
}

/// A prime for one origin, with its coverage over the step's universe.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub cube: Cube,
    pub mask: CoverageMask,
}

/// Look-ahead on one minterm that a candidate would leave uncovered.
#[derive(Debug, Clone)]
pub struct NeighborEval {
    pub minterm: TaggedMinterm,
    pub off: Vec<Cube>,
    pub sdm: Option<DiSet>,
    pub pis: Vec<Cube>,
    pub best: Cube,
}

#[derive(Debug, Clone)]
pub struct CandidateScore {
    pub stranded: CoverageMask,
    pub neighbors: Vec<NeighborEval>,
    /// Sum of the literal counts of the stranded minterms' best primes.
    pub score: usize,
}

#[derive(Debug, Clone)]
pub enum Choice {
    /// One candidate covers everything any other candidate covers.
    Dominant(usize),
    /// Chosen by scoring, one entry per candidate.
    Neighbor {
        pick: usize,
        scores: Vec<CandidateScore>,
    },
}

impl Choice {
    pub fn pick(&self) -> usize {
        match self {
            Choice::Dominant(i) | Choice::Neighbor { pick: i, .. } => *i,
        }
    }
}

/// Everything computed for one origin before anything is committed.
#[derive(Debug, Clone)]
pub struct EdsaStep {
    pub origin: TaggedMinterm,
    pub off: Vec<Cube>,
    pub sdm: Option<DiSet>,
    /// Minterms with some still-uncovered output in the origin's tag.
    pub universe: Vec<BitVec>,
    pub candidates: Vec<Candidate>,
    pub choice: Choice,
}

impl EdsaStep {
    pub fn chosen(&self) -> TaggedCube {
        TaggedCube {
            cube: self.candidates[self.choice.pick()].cube.clone(),
            tag: self.origin.tag.clone(),
        }
    }
}

/// Incremental state of the tagged cover loop.
#[derive(Debug, Clone)]
pub struct EdsaState<'a> {
    f: &'a MultiFunction,
    /// Outputs still true and uncovered, per minterm.
    open: Vec<BitVec>,
    cover: Vec<TaggedCube>,
}

impl<'a> EdsaState<'a> {
    pub fn new(f: &'a MultiFunction) -> Self {
        let open = (0..f.rows())
            .map(|r| f.outputs_with(r, OutputValue::One))
            .collect();
        EdsaState {
            f,
            open,
            cover: Vec::new(),
        }
    }

    pub fn cover(&self) -> &[TaggedCube] {
        &self.cover
    }

    pub fn into_cover(self) -> Vec<TaggedCube> {
        self.cover
    }

    pub fn is_done(&self) -> bool {
        self.open.iter().all(BitVec::is_zero)
    }

    /// The minterm with its uncovered outputs as the tag.
    pub fn open_minterm(&self, m: &BitVec) -> TaggedMinterm {
        let r = m.to_u64().expect("bounded width") as usize;
        TaggedMinterm {
            minterm: m.clone(),
            tag: self.open[r].clone(),
            dc: self.f.outputs_with(r, OutputValue::DontCare),
        }
    }

    /// Uncovered minterm of smallest open weight, smallest value first.
    pub fn next_origin(&self) -> Option<BitVec> {
        (0..self.f.rows())
            .filter(|&r| !self.open[r].is_zero())
            .min_by_key(|&r| (self.open[r].count_ones(), r))
            .map(|r| BitVec::from_u64(self.f.inputs, r as u64))
    }

    fn universe(&self, tag: &BitVec) -> Vec<BitVec> {
        (0..self.f.rows())
            .filter(|&r| !(&self.open[r] & tag).is_zero())
            .map(|r| BitVec::from_u64(self.f.inputs, r as u64))
            .collect()
    }

    /// Best prime for `m` under its open tag: fewest literals, then widest
    /// open coverage, then smallest text.
    pub fn best_prime(&self, m: &BitVec) -> Result<NeighborEval> {
        let minterm = self.open_minterm(m);
        assert!(
            !minterm.tag.is_zero(),
            "minterm {m} has nothing left to cover"
        );
        let off = subfunction_off(&minterm.tag, self.f);
        let (pis, sdm) = generate_spi_with_sdm(m, &off)?;
        let universe = self.universe(&minterm.tag);
        let best = pis
            .iter()
            .min_by_key(|p| {
                let covered = coverage_mask(p, &universe).count();
                (p.literal_count(), std::cmp::Reverse(covered), p.to_string())
            })
            .expect("at least one prime contains the minterm")
            .clone();
        Ok(NeighborEval {
            minterm,
            off,
            sdm,
            pis,
            best,
        })
    }

    /// Builds the candidate primes for `origin` and decides which to commit.
    pub fn decide(&self, origin: &BitVec) -> Result<EdsaStep> {
        let origin = self.open_minterm(origin);
        assert!(
            !origin.tag.is_zero(),
            "origin {} is already covered",
            origin.minterm
        );
        let off = subfunction_off(&origin.tag, self.f);
        let (pis, sdm) = generate_spi_with_sdm(&origin.minterm, &off)?;
        let universe = self.universe(&origin.tag);
        let candidates: Vec<Candidate> = pis
            .into_iter()
            .map(|cube| {
                let mask = coverage_mask(&cube, &universe);
                Candidate { cube, mask }
            })
            .collect();
        let masks: Vec<CoverageMask> = candidates.iter().map(|c| c.mask.clone()).collect();
        let choice = match dominant(&masks) {
            Some(i) => Choice::Dominant(i),
            None => self.score_candidates(&candidates, &universe)?,
        };
        Ok(EdsaStep {
            origin,
            off,
            sdm,
            universe,
            candidates,
            choice,
        })
    }

    fn score_candidates(&self, candidates: &[Candidate], universe: &[BitVec]) -> Result<Choice> {
        let len = universe.len();
        let mut scores = Vec::with_capacity(candidates.len());
        for (i, c) in candidates.iter().enumerate() {
            let others = candidates
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(CoverageMask::empty(len), |acc, (_, o)| acc.or(&o.mask));
            let stranded = others.minus(&c.mask);
            let neighbors = stranded
                .indices()
                .map(|t| self.best_prime(&universe[t]))
                .collect::<Result<Vec<_>>>()?;
            let score = neighbors.iter().map(|n| n.best.literal_count()).sum();
            scores.push(CandidateScore {
                stranded,
                neighbors,
                score,
            });
        }
        let pick = (0..candidates.len())
            .min_by_key(|&i| {
                (
                    scores[i].score,
                    std::cmp::Reverse(candidates[i].mask.count()),
                    candidates[i].cube.to_string(),
                )
            })
            .expect("nonempty candidate list");
        Ok(Choice::Neighbor { pick, scores })
    }

    /// Marks the tagged outputs of every minterm in `tc.cube` as covered.
    pub fn commit_cube(&mut self, tc: TaggedCube) {
        for m in tc.cube.minterms() {
            let r = m.to_u64().expect("bounded width") as usize;
            self.open[r] = self.open[r].and_not(&tc.tag);
        }
        log::trace!("commit {tc}");
        self.cover.push(tc);
    }

    /// Commits the chosen candidate and, after a scored choice, the best
    /// prime of each minterm it stranded that is still open.
    pub fn commit(&mut self, step: &EdsaStep) -> Result<Vec<TaggedCube>> {
        let mut added = vec![step.chosen()];
        self.commit_cube(step.chosen());
        if let Choice::Neighbor { pick, scores } = &step.choice {
            for t in scores[*pick].stranded.indices() {
                let m = &step.universe[t];
                if self.open_minterm(m).tag.is_zero() {
                    continue;
                }
                let eval = self.best_prime(m)?;
                let tc = TaggedCube {
                    cube: eval.best,
                    tag: eval.minterm.tag,
                };
                added.push(tc.clone());
                self.commit_cube(tc);
            }
        }
        Ok(added)
    }
}

/// Tagged cover of every output. A single-output function goes through
/// [`direct_cover`] instead.
pub fn edsa_minimize(f: &MultiFunction) -> Result<Vec<TaggedCube>> {
    edsa_minimize_traced(f, |_| {})
}

/// Like [`edsa_minimize`], reporting each decision before it is committed.
pub fn edsa_minimize_traced(
    f: &MultiFunction,
    mut observer: impl FnMut(&EdsaStep),
) -> Result<Vec<TaggedCube>> {
    if f.outputs() == 1 {
        let single = f.output_function(0)?;
        if single.on.is_empty() {
            return Ok(Vec::new());
        }
        let tag = BitVec::ones(1);
        return Ok(direct_cover(&single)?
            .cubes
            .into_iter()
            .map(|cube| TaggedCube {
                cube,
                tag: tag.clone(),
            })
            .collect());
    }
    let mut state = EdsaState::new(f);
    while let Some(origin) = state.next_origin() {
        let step = state.decide(&origin)?;
        observer(&step);
        state.commit(&step)?;
    }
    Ok(state.into_cover())
}

/// Cubes whose tag includes output `j`.
pub fn cover_of_output(cover: &[TaggedCube], j: usize) -> Vec<Cube> {
    cover
        .iter()
        .filter(|tc| tc.tag.bit(j))
        .map(|tc| tc.cube.clone())
        .collect()
}

/// Problems with a tagged cover, one line each; empty when every output is
/// realized exactly on its care minterms.
pub fn verify_tagged(cover: &[TaggedCube], f: &MultiFunction) -> Vec<String> {
    let mut problems = Vec::new();
    for tc in cover {
        if tc.cube.width() != f.inputs() || tc.tag.width() != f.outputs() {
            problems.push(format!("{tc}: width does not match the function"));
            continue;
        }
        for m in tc.cube.minterms() {
            let r = m.to_u64().expect("bounded width") as usize;
            for j in tc.tag.ones_iter() {
                if f.get(r, j) == OutputValue::Zero {
                    problems.push(format!("{tc} covers OFF minterm {m} of output {j}"));
                }
            }
        }
    }
    if !problems.is_empty() {
        return problems;
    }
    for j in 0..f.outputs() {
        let cubes = cover_of_output(cover, j);
        for r in 0..f.rows() {
            let m = BitVec::from_u64(f.inputs(), r as u64);
            if f.get(r, j) == OutputValue::One && !cubes.iter().any(|c| c.contains_minterm(&m)) {
                problems.push(format!("ON minterm {m} of output {j} is uncovered"));
            }
        }
    }
    problems
}
