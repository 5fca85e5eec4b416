//! Bit strings and positional cubes.

mod bitvec;
mod cube;

pub use bitvec::{split_lowest_one, subset_ones, BitVec};
pub use cube::{complement, Cube};
