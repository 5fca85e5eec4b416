//! From difference indicators to the prime implicants containing a minterm.
//!
//! Each indicator is a product term of the reduced offset; its complement is
//! a clause whose literals sit at the indicator's 1-bits. Multiplying the
//! clauses out (with absorption after every clause) yields one bit vector per
//! prime implicant, marking which positions keep the minterm's literal.

use crate::bitcube::{BitVec, Cube};
use crate::error::{Error, Result};
use crate::reduced_offset::{generate_sdm, DiSet, DiffIndicator};

/// The one-hot projections of a single indicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseVectors(Vec<BitVec>);

impl ClauseVectors {
    pub fn as_slice(&self) -> &[BitVec] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Pairwise incomparable literal-position vectors, in first-seen order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NVectorSet(Vec<BitVec>);

impl NVectorSet {
    /// The seed `{00...0}`.
    pub fn seed(width: usize) -> Self {
        NVectorSet(vec![BitVec::zeros(width)])
    }

    pub fn as_slice(&self) -> &[BitVec] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<BitVec> {
        self.0
    }
}

/// Splits `d` into one one-hot vector per 1-bit, lowest bit first.
pub fn generate_m(d: &DiffIndicator) -> Result<ClauseVectors> {
    let mut rest = d.value().clone();
    if rest.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut out = Vec::with_capacity(rest.count_ones());
    while let Some((one_hot, next)) = rest.split_lowest_one() {
        out.push(one_hot);
        rest = next;
    }
    // report in text order, highest position first
    out.reverse();
    Ok(ClauseVectors(out))
}

/// Removes every vector that is a superset of another; of two equal vectors
/// the earlier one survives.
pub fn minimize_n(vectors: Vec<BitVec>) -> NVectorSet {
    let mut alive = vec![true; vectors.len()];
    for i in 0..vectors.len() {
        if !alive[i] {
            continue;
        }
        for k in i + 1..vectors.len() {
            if !alive[k] {
                continue;
            }
            let common = &vectors[i] & &vectors[k];
            if common == vectors[i] {
                alive[k] = false;
            } else if common == vectors[k] {
                alive[i] = false;
                break;
            }
        }
    }
    NVectorSet(
        vectors
            .into_iter()
            .zip(alive)
            .filter_map(|(v, keep)| keep.then_some(v))
            .collect(),
    )
}

/// Multiplies the current product set by one clause and minimizes.
pub fn cross_or(n: &NVectorSet, m: &ClauseVectors) -> NVectorSet {
    let mut products = Vec::with_capacity(n.len() * m.len());
    for e in &n.0 {
        for v in &m.0 {
            products.push(e | v);
        }
    }
    minimize_n(products)
}

/// Folds every indicator of `set` into the product set, in order.
pub fn generate_n(set: &DiSet) -> Result<NVectorSet> {
    generate_n_traced(set, |_, _, _| {})
}

/// Like [`generate_n`], reporting `(j, M_j, N_j)` after each clause.
pub fn generate_n_traced(
    set: &DiSet,
    mut observer: impl FnMut(usize, &ClauseVectors, &NVectorSet),
) -> Result<NVectorSet> {
    let mut n = NVectorSet::seed(set.width());
    for (j, d) in set.iter().enumerate() {
        let m = generate_m(d)?;
        n = cross_or(&n, &m);
        observer(j + 1, &m, &n);
    }
    Ok(n)
}

/// The cube keeping `p`'s literals at the 1-bits of `e`.
pub fn vector_to_pi(p: &BitVec, e: &BitVec) -> Cube {
    let free = !e;
    Cube::from_parts(&!p | &free, p | &free).expect("cube from a minterm is never empty")
}

/// One cube per vector, sorted by cube text.
pub fn vectors_to_pis(p: &BitVec, n: &NVectorSet) -> Vec<Cube> {
    let mut pis: Vec<Cube> = n.0.iter().map(|e| vector_to_pi(p, e)).collect();
    pis.sort_by_cached_key(|c| c.to_string());
    pis
}

/// All prime implicants of the function `not off` that contain `p`, sorted
/// by cube text. An empty offset yields the universal cube.
pub fn generate_spi(p: &BitVec, off: &[Cube]) -> Result<Vec<Cube>> {
    let set = match generate_sdm(p, off) {
        Ok(set) => set,
        Err(Error::EmptyOffset) => return Ok(vec![Cube::universe(p.width())]),
        Err(e) => return Err(e),
    };
    let n = generate_n(&set)?;
    Ok(vectors_to_pis(p, &n))
}

/// [`generate_spi`] that also hands back the indicator set it built.
pub fn generate_spi_with_sdm(p: &BitVec, off: &[Cube]) -> Result<(Vec<Cube>, Option<DiSet>)> {
    let set = match generate_sdm(p, off) {
        Ok(set) => set,
        Err(Error::EmptyOffset) => return Ok((vec![Cube::universe(p.width())], None)),
        Err(e) => return Err(e),
    };
    let n = generate_n(&set)?;
    Ok((vectors_to_pis(p, &n), Some(set)))
}
