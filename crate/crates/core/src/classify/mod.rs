//! Classification of indecomposable quandles from transitive groups.

mod brute;
mod db;
mod groupdb;
mod transitive;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::homogeneous_quandle;
use crate::perm::{ParseError, PermGroup, Permutation};
use crate::rack::{canonical_form, RackTable, TableParseError};

pub use brute::{brute_force_indecomposable, MAX_BRUTE_FORCE_SIZE};
pub use db::{QuandleDatabase, QuandleRecord};
pub use groupdb::GroupDatabase;
pub use transitive::MAX_BUILTIN_DEGREE;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("no built-in transitive groups for degree {0} (supported: 1..={max})", max = MAX_BUILTIN_DEGREE)]
    UnsupportedDegree(usize),
    #[error("group database has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no group data for degree {0}")]
    MissingGroups(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Generators { line: usize, source: ParseError },
    #[error("line {line}: group is not transitive")]
    NotTransitive { line: usize },
    #[error("brute-force enumeration supports sizes up to {max}, got {0}", max = MAX_BRUTE_FORCE_SIZE)]
    TooLarge(usize),
    #[error("size {n} has {count} quandles, index {index} is out of range")]
    IndexOutOfRange {
        n: usize,
        index: usize,
        count: usize,
    },
    #[error("database has no section for size {0}")]
    SizeAbsent(usize),
    #[error("unsupported database version {0:?}")]
    VersionMismatch(String),
    #[error("checksum mismatch")]
    Checksum,
    #[error("size {n}, table {index}: {msg}")]
    BadRecord { n: usize, index: usize, msg: String },
    #[error(transparent)]
    Table(#[from] TableParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Transitive subgroups of `S_degree` up to conjugacy, sorted by order and
/// then by generator list.
pub fn builtin_transitive_groups(degree: usize) -> Result<GroupDatabase, ClassifyError> {
    let groups =
        transitive::transitive_groups(degree).ok_or(ClassifyError::UnsupportedDegree(degree))?;
    Ok(GroupDatabase::new(degree, groups))
}

/// Every indecomposable quandle of size `n`, once per isomorphism class,
/// sorted by canonical table.
///
/// For each group `G` the stabilizer `H` of point 1 is computed and every
/// non-identity `z` in the center of `H` gives a homogeneous quandle.
pub fn classify_indecomposable(
    n: usize,
    groups: &GroupDatabase,
) -> Result<Vec<QuandleRecord>, ClassifyError> {
    if n == 1 {
        let t = RackTable::from_fn(1, |_, _| 0).expect("one-point quandle");
        return Ok(records_from_tables(vec![t]));
    }
    if groups.degree() != n {
        return Err(ClassifyError::DegreeMismatch {
            expected: n,
            found: groups.degree(),
        });
    }
    let jobs: Vec<(&PermGroup, PermGroup, Permutation)> = groups
        .groups()
        .par_iter()
        .flat_map_iter(|g| {
            let h = g.stabilizer(0);
            let centre = h.center();
            centre
                .into_iter()
                .filter(|z| !z.is_identity())
                .map(move |z| (g, h.clone(), z))
        })
        .collect();
    let tables: BTreeSet<RackTable> = jobs
        .par_iter()
        .filter_map(|(g, h, z)| {
            let q = homogeneous_quandle(g, h, z).expect("central elements give quandles");
            q.is_indecomposable().then(|| canonical_form(&q))
        })
        .collect();
    Ok(records_from_tables(tables.into_iter().collect()))
}

/// Builds records from canonical tables, indexing them in ascending order.
pub fn records_from_tables(mut tables: Vec<RackTable>) -> Vec<QuandleRecord> {
    tables.sort();
    tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| QuandleRecord::new(i + 1, t))
        .collect()
}

/// Number of indecomposable quandles of size `n`. Sizes up to the built-in
/// range need no group data.
pub fn q(n: usize, groups: Option<&GroupDatabase>) -> Result<usize, ClassifyError> {
    if n == 1 {
        return Ok(1);
    }
    let builtin;
    let db = match groups {
        Some(g) => g,
        None if n <= MAX_BUILTIN_DEGREE => {
            builtin = builtin_transitive_groups(n)?;
            &builtin
        }
        None => return Err(ClassifyError::MissingGroups(n)),
    };
    Ok(classify_indecomposable(n, db)?.len())
}

/// The `i`-th (1-based) quandle of size `n` in the database.
pub fn small_quandle(db: &QuandleDatabase, n: usize, i: usize) -> Result<RackTable, ClassifyError> {
    let recs = db.records(n).ok_or(ClassifyError::SizeAbsent(n))?;
    if i == 0 || i > recs.len() {
        return Err(ClassifyError::IndexOutOfRange {
            n,
            index: i,
            count: recs.len(),
        });
    }
    Ok(recs[i - 1].table.clone())
}

pub(crate) fn inner_order(t: &RackTable) -> BigUint {
    t.inner_group().order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{conjugation_rack, dihedral_quandle};
    use crate::perm::parse_cycles;
    use crate::rack::find_isomorphism;

    #[test]
    fn builtin_small_degrees() {
        assert_eq!(builtin_transitive_groups(2).unwrap().len(), 1);
        assert_eq!(builtin_transitive_groups(3).unwrap().len(), 2);
        assert_eq!(builtin_transitive_groups(4).unwrap().len(), 5);
        assert!(matches!(
            builtin_transitive_groups(9),
            Err(ClassifyError::UnsupportedDegree(9))
        ));
    }

    #[test]
    fn small_classifications() {
        assert_eq!(q(1, None).unwrap(), 1);
        assert_eq!(q(2, None).unwrap(), 0);
        assert_eq!(q(3, None).unwrap(), 1);
        let four = classify_indecomposable(4, &builtin_transitive_groups(4).unwrap()).unwrap();
        assert_eq!(four.len(), 1);
        let t = conjugation_rack(
            &PermGroup::alternating(4),
            &[parse_cycles("(1,2,3)", 4).unwrap()],
        )
        .unwrap();
        assert_eq!(four[0].table, canonical_form(&t));
        assert_eq!(q(6, None).unwrap(), 2);
        assert!(matches!(q(13, None), Err(ClassifyError::MissingGroups(13))));
    }

    #[test]
    fn degree_mismatch() {
        let g = builtin_transitive_groups(3).unwrap();
        assert!(matches!(
            classify_indecomposable(4, &g),
            Err(ClassifyError::DegreeMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn small_quandle_lookup() {
        let mut db = QuandleDatabase::default();
        for n in 2..=5 {
            db.insert(
                n,
                classify_indecomposable(n, &builtin_transitive_groups(n).unwrap()).unwrap(),
            );
        }
        let d3 = small_quandle(&db, 3, 1).unwrap();
        assert!(find_isomorphism(&d3, &dihedral_quandle(3).unwrap()).is_some());
        assert!(matches!(
            small_quandle(&db, 2, 1),
            Err(ClassifyError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            small_quandle(&db, 7, 1),
            Err(ClassifyError::SizeAbsent(7))
        ));
    }
}
