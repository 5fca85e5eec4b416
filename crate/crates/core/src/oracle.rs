//! Brute-force ground truth for small functions.
//!
//! Nothing here touches difference indicators: primes come from textbook
//! Quine-McCluskey merging on `(value, dont_care_mask)` integer pairs, and
//! equivalence is checked minterm by minterm.

use std::collections::{BTreeSet, HashSet};

use crate::bitcube::{BitVec, Cube};
use crate::error::{Error, Result};
use crate::function::LogicFunction;

pub const PRIMES_MAX_INPUTS: usize = 14;
pub const EQUIV_MAX_INPUTS: usize = 20;
pub const MIN_COVER_MAX_INPUTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Zero,
    One,
    DontCare,
}

/// Full value map over all `2^n` minterms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    inputs: usize,
    values: Vec<Value>,
}

impl TruthTable {
    /// ON minterms map to 1, OFF to 0, everything else is a don't care.
    pub fn from_function(f: &LogicFunction) -> Result<Self> {
        guard("truth table inputs", f.inputs(), EQUIV_MAX_INPUTS)?;
        let n = f.inputs();
        let mut values = vec![Value::DontCare; 1 << n];
        for (set, v) in [(&f.on, Value::One), (&f.off, Value::Zero)] {
            for c in set {
                for m in c.minterms() {
                    values[m.to_u64().expect("fits") as usize] = v;
                }
            }
        }
        Ok(TruthTable { inputs: n, values })
    }

    pub fn from_values(inputs: usize, values: Vec<Value>) -> Self {
        assert_eq!(values.len(), 1 << inputs);
        TruthTable { inputs, values }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn value(&self, m: u64) -> Value {
        self.values[m as usize]
    }

    pub fn minterms_with(&self, v: Value) -> impl Iterator<Item = u64> + '_ {
        (0..self.values.len() as u64).filter(move |&m| self.values[m as usize] == v)
    }
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}

fn implicant_to_cube(n: usize, value: u64, dc: u64) -> Cube {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Cube::from_care(
        &BitVec::from_u64(n, full & !dc),
        &BitVec::from_u64(n, value),
    )
}

/// Every prime implicant of the region where `f` is 1 or unspecified,
/// sorted by cube text.
pub fn all_primes(f: &LogicFunction) -> Result<Vec<Cube>> {
    guard("prime enumeration inputs", f.inputs(), PRIMES_MAX_INPUTS)?;
    Ok(primes_of_table(&TruthTable::from_function(f)?))
}

pub fn primes_of_table(t: &TruthTable) -> Vec<Cube> {
    let n = t.inputs;
    let mut level: HashSet<(u64, u64)> = t
        .minterms_with(Value::One)
        .chain(t.minterms_with(Value::DontCare))
        .map(|m| (m, 0))
        .collect();
    let mut primes: BTreeSet<(u64, u64)> = BTreeSet::new();
    while !level.is_empty() {
        let mut merged: HashSet<(u64, u64)> = HashSet::new();
        let mut used: HashSet<(u64, u64)> = HashSet::new();
        for &(v, dc) in &level {
            for b in 0..n {
                let bit = 1u64 << b;
                // pair with the neighbour one popcount group higher
                if dc & bit == 0 && v & bit == 0 && level.contains(&(v | bit, dc)) {
                    merged.insert((v, dc | bit));
                    used.insert((v, dc));
                    used.insert((v | bit, dc));
                }
            }
        }
        primes.extend(level.iter().filter(|imp| !used.contains(imp)));
        level = merged;
    }
    let mut cubes: Vec<Cube> = primes
        .into_iter()
        .map(|(v, dc)| implicant_to_cube(n, v, dc))
        .collect();
    cubes.sort_by_cached_key(|c| c.to_string());
    cubes
}

fn cover_value(cover: &[Cube], m: &BitVec) -> bool {
    cover.iter().any(|c| c.contains_minterm(m))
}

/// True iff the two covers agree on every care minterm of `care`.
pub fn equivalent(a: &[Cube], b: &[Cube], care: &TruthTable) -> Result<bool> {
    guard("equivalence inputs", care.inputs, EQUIV_MAX_INPUTS)?;
    let n = care.inputs;
    Ok((0..1u64 << n).all(|m| {
        if care.value(m) == Value::DontCare {
            return true;
        }
        let mv = BitVec::from_u64(n, m);
        cover_value(a, &mv) == cover_value(b, &mv)
    }))
}

/// True iff `cover` realizes `care` on every care minterm.
pub fn realizes(cover: &[Cube], care: &TruthTable) -> Result<bool> {
    guard("equivalence inputs", care.inputs, EQUIV_MAX_INPUTS)?;
    let n = care.inputs;
    Ok((0..1u64 << n).all(|m| match care.value(m) {
        Value::DontCare => true,
        v => cover_value(cover, &BitVec::from_u64(n, m)) == (v == Value::One),
    }))
}

/// Size of a smallest cover of the ON-set by implicants, by exhaustive search.
pub fn minimum_cover_size(f: &LogicFunction) -> Result<usize> {
    guard(
        "exact minimum cover inputs",
        f.inputs(),
        MIN_COVER_MAX_INPUTS,
    )?;
    let t = TruthTable::from_function(f)?;
    let on: Vec<u64> = t.minterms_with(Value::One).collect();
    if on.is_empty() {
        return Ok(0);
    }
    let n = f.inputs();
    let masks: Vec<u64> = primes_of_table(&t)
        .iter()
        .map(|p| {
            on.iter()
                .enumerate()
                .filter(|(_, &m)| p.contains_minterm(&BitVec::from_u64(n, m)))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .filter(|&m| m != 0)
        .collect();
    let all = if on.len() == 64 {
        u64::MAX
    } else {
        (1u64 << on.len()) - 1
    };
    let widest = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let mut k = (on.len() as u32).div_ceil(widest) as usize;
    while !coverable(all, k, &masks, widest) {
        k += 1;
    }
    Ok(k)
}

fn coverable(uncovered: u64, k: usize, masks: &[u64], widest: u32) -> bool {
    if uncovered == 0 {
        return true;
    }
    if k == 0 || (k as u32) * widest < uncovered.count_ones() {
        return false;
    }
    let first = 1u64 << uncovered.trailing_zeros();
    masks
        .iter()
        .filter(|&&m| m & first != 0)
        .any(|&m| coverable(uncovered & !m, k - 1, masks, widest))
}
