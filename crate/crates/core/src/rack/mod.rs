//! Rack and quandle tables.

mod automorphism;
mod canonical;
mod iso;
mod table;

pub use automorphism::automorphism_group;
pub use canonical::{canonical_form, canonical_labeling};
pub use iso::find_isomorphism;
pub(crate) use table::parse_table_lines;
pub use table::{ComponentPartition, RackError, RackTable, TableParseError};
