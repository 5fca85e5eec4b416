use crate::bitcube::{complement, BitVec, Cube};
use crate::error::{Error, Result};

/// Default ceiling on input count for operations that enumerate or
/// complement the input space.
pub const DEFAULT_MAX_EXPAND: usize = 16;

/// A single-output incompletely specified function given by cube lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicFunction {
    pub name: String,
    inputs: usize,
    pub on: Vec<Cube>,
    pub off: Vec<Cube>,
    pub dc: Vec<Cube>,
}

impl LogicFunction {
    /// Builds a function and checks that no ON-cube meets an OFF-cube.
    pub fn new(inputs: usize, on: Vec<Cube>, off: Vec<Cube>, dc: Vec<Cube>) -> Result<Self> {
        for c in on.iter().chain(&off).chain(&dc) {
            if c.width() != inputs {
                return Err(Error::WidthMismatch {
                    left: inputs,
                    right: c.width(),
                });
            }
        }
        let f = LogicFunction {
            name: String::new(),
            inputs,
            on,
            off,
            dc,
        };
        f.check_consistent()?;
        Ok(f)
    }

    /// Function from ON and OFF minterm lists.
    pub fn from_minterms(inputs: usize, on: &[BitVec], off: &[BitVec]) -> Result<Self> {
        LogicFunction::new(
            inputs,
            on.iter().map(Cube::minterm).collect(),
            off.iter().map(Cube::minterm).collect(),
            Vec::new(),
        )
    }

    /// Function whose OFF-set is everything outside `on` and `dc`.
    pub fn with_derived_off(
        inputs: usize,
        on: Vec<Cube>,
        dc: Vec<Cube>,
        max_expand: usize,
    ) -> Result<Self> {
        if inputs > max_expand {
            return Err(Error::TooLarge {
                what: "input count for OFF-set derivation",
                n: inputs,
                limit: max_expand,
            });
        }
        let care: Vec<Cube> = on.iter().chain(&dc).cloned().collect();
        let off = complement(&care, inputs);
        LogicFunction::new(inputs, on, off, dc)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    fn check_consistent(&self) -> Result<()> {
        for a in &self.on {
            if let Some(b) = self.off.iter().find(|b| a.intersects(b)) {
                let shared = a.intersection(b).expect("intersecting cubes");
                return Err(Error::InconsistentFunction {
                    minterm: shared.min_minterm().to_string(),
                    off_cube: b.to_string(),
                });
            }
        }
        Ok(())
    }

    /// ON-minterms in canonical order: ON-cubes in input order, each in
    /// ascending numeric order, duplicates dropped.
    pub fn on_minterms(&self, limit: usize) -> Result<Vec<BitVec>> {
        let total: u64 = self
            .on
            .iter()
            .map(Cube::volume)
            .fold(0, u64::saturating_add);
        if total > limit as u64 {
            return Err(Error::TooLarge {
                what: "ON-minterm count",
                n: usize::try_from(total).unwrap_or(usize::MAX),
                limit,
            });
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for c in &self.on {
            for m in c.minterms() {
                if seen.insert(m.clone()) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    pub fn is_off(&self, m: &BitVec) -> bool {
        self.off.iter().any(|c| c.contains_minterm(m))
    }

    pub fn is_on(&self, m: &BitVec) -> bool {
        self.on.iter().any(|c| c.contains_minterm(m))
    }
}
