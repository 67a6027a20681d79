//! Finite racks and quandles.
//!
//! Racks are stored as operation tables, `table[i][j] = i ▷ j`. Points are
//! 0-based in memory; every text format and printed value is 1-based.

pub mod classify;
pub mod construct;
pub mod envgroup;
pub mod homology;
pub mod perm;
pub mod rack;
pub mod typed;
