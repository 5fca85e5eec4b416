//! Two-level logic minimization driven by difference indicators.
//!
//! For a chosen ON-minterm `p`, every OFF-cube is folded into a single
//! n-bit difference indicator. The absorption-minimal set of indicators is
//! turned into the complete list of prime implicants containing `p`, and a
//! direct-cover loop builds a cover from those lists.

pub mod bitcube;
pub mod cover;
pub mod error;
pub mod function;
pub mod multi_output;
pub mod oracle;
pub mod pi_gen;
pub mod pla;
pub mod reduced_offset;

pub use bitcube::{BitVec, Cube};
pub use error::{Error, Result};
pub use function::LogicFunction;
