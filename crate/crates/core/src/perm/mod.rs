//! Permutations and permutation groups.

mod bsgs;
mod group;
mod parse;
mod permutation;

pub use group::{GroupError, PermGroup};
pub use parse::{parse_cycles, parse_generator_list, ParseError};
pub use permutation::Permutation;
