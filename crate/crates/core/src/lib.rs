//! Exact tools for variable-length codes: decide unique decodability of a
//! word sequence, count prefix codes and uniquely decodable codes for the
//! length-distribution families with known closed forms, cross-check the
//! formulas against brute-force sweeps, and tabulate how the prefix-code
//! proportion approaches its sharp lower bound.
//!
//! All counts are arbitrary-precision naturals and all ratios exact
//! rationals; no contract in this crate involves floating point.

pub mod analysis;
pub mod census;
pub mod closed_forms;
pub mod decide;
mod error;
pub mod words;

pub use error::{Error, Result};
pub use words::{AlphabetSize, CodeSequence, LengthDistribution, Word};

/// Default ceiling on enumeration sizes (tuples per sweep, words per
/// stream). Keeps exhaustive runs at desk scale; raise explicitly for
/// bigger sweeps.
pub const DEFAULT_TUPLE_BUDGET: u64 = 1 << 22;
