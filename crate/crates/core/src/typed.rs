//! Type D subracks.
//!
//! A rack is of type D when it has a decomposable subrack `Y = R ⊔ S`, with
//! `R` and `S` the two components of `Y`, and points `r ∈ R`, `s ∈ S` such
//! that `r ▷ (s ▷ (r ▷ s)) ≠ s`.

use rayon::prelude::*;

use crate::classify::QuandleRecord;
use crate::rack::RackTable;

/// A subrack with two components and a pair of points witnessing type D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDWitness {
    pub r: usize,
    pub s: usize,
    pub subrack: Vec<usize>,
    pub component_of_r: Vec<usize>,
    pub component_of_s: Vec<usize>,
}

impl TypeDWitness {
    /// Checks every defining condition against `x`.
    pub fn verify(&self, x: &RackTable) -> bool {
        let n = x.size();
        if self.r >= n || self.s >= n || self.subrack.iter().any(|&e| e >= n) {
            return false;
        }
        if x.subrack_closure(&self.subrack) != self.subrack {
            return false;
        }
        let mut union: Vec<usize> = self
            .component_of_r
            .iter()
            .chain(&self.component_of_s)
            .copied()
            .collect();
        union.sort_unstable();
        if union != self.subrack {
            return false;
        }
        let Some(blocks) = components_within(x, &self.subrack) else {
            return false;
        };
        blocks.len() == 2
            && blocks.contains(&self.component_of_r)
            && blocks.contains(&self.component_of_s)
            && self.component_of_r != self.component_of_s
            && self.component_of_r.contains(&self.r)
            && self.component_of_s.contains(&self.s)
            && violates(x, self.r, self.s)
    }
}

/// `r ▷ (s ▷ (r ▷ s)) ≠ s`.
pub fn violates(x: &RackTable, r: usize, s: usize) -> bool {
    x.get(r, x.get(s, x.get(r, s))) != s
}

/// Components of the subrack on `elements` (ascending), in original labels.
fn components_within(x: &RackTable, elements: &[usize]) -> Option<Vec<Vec<usize>>> {
    let sub = x.induced(elements)?;
    Some(
        sub.components()
            .blocks
            .into_iter()
            .map(|b| b.into_iter().map(|i| elements[i]).collect())
            .collect(),
    )
}

/// The first witness in row-major order of `(r, s)`, if `x` is of type D.
///
/// Any such `Y` contains `⟨r, s⟩`, in which `r` and `s` must already lie in
/// different components; conversely those two components form a valid `Y`.
pub fn is_type_d(x: &RackTable) -> Option<TypeDWitness> {
    let n = x.size();
    (0..n).into_par_iter().find_map_first(|r| {
        (0..n).find_map(|s| {
            if !violates(x, r, s) {
                return None;
            }
            let subrack = x.subrack_closure(&[r, s]);
            let blocks = components_within(x, &subrack)?;
            let br = blocks.iter().position(|b| b.contains(&r))?;
            let bs = blocks.iter().position(|b| b.contains(&s))?;
            (br != bs).then(|| TypeDWitness {
                r,
                s,
                subrack,
                component_of_r: blocks[br].clone(),
                component_of_s: blocks[bs].clone(),
            })
        })
    })
}

/// Number of records whose quandle is of type D.
pub fn type_d_census(records: &[QuandleRecord]) -> usize {
    records
        .par_iter()
        .filter(|rec| is_type_d(&rec.table).is_some())
        .count()
}
