//! Reference group orders, quandle counts and second homology groups, and
//! a checker that recomputes them from whatever group data is available.

use std::collections::BTreeMap;
use std::path::Path;

use quandleforge::classify::{classify_indecomposable, QuandleRecord};
use quandleforge::construct::{affine_quandle_zn, conjugation_rack, dihedral_quandle};
use quandleforge::envgroup::finite_enveloping_order;
use quandleforge::homology::{rack_homology, HomologyResult};
use quandleforge::perm::{parse_cycles, PermGroup};
use quandleforge::rack::RackTable;

use crate::commands::group_database;
use crate::error::CliError;

enum Build {
    Dihedral(usize),
    Affine(usize, usize),
    Conj {
        alternating: bool,
        degree: usize,
        rep: &'static str,
    },
}

/// Quandle, `|Inn|`, order of the finite enveloping group.
const ENVELOPING: &[(&str, Build, u64, u64)] = &[
    ("D3", Build::Dihedral(3), 6, 6),
    (
        "T",
        Build::Conj {
            alternating: true,
            degree: 4,
            rep: "(1,2,3)",
        },
        12,
        24,
    ),
    ("Aff(5,2)", Build::Affine(5, 2), 20, 20),
    ("Aff(5,3)", Build::Affine(5, 3), 20, 20),
    (
        "(1,2)^S4",
        Build::Conj {
            alternating: false,
            degree: 4,
            rep: "(1,2)",
        },
        24,
        24,
    ),
    ("Aff(7,3)", Build::Affine(7, 3), 42, 42),
    ("Aff(7,5)", Build::Affine(7, 5), 42, 42),
    (
        "(1,2,3,4)^S4",
        Build::Conj {
            alternating: false,
            degree: 4,
            rep: "(1,2,3,4)",
        },
        24,
        96,
    ),
    (
        "(1,2)^S5",
        Build::Conj {
            alternating: false,
            degree: 5,
            rep: "(1,2)",
        },
        120,
        120,
    ),
];

/// `q(n)` for `n = 1..=35`.
pub const Q: [usize; 35] = [
    1, 0, 1, 1, 3, 2, 5, 3, 8, 1, 9, 10, 11, 0, 7, 9, 15, 12, 17, 10, 9, 0, 21, 42, 34, 0, 65, 13,
    27, 24, 29, 17, 11, 0, 15,
];

/// (multiplicity, torsion) pairs, free rank 1.
type Multiset = &'static [(usize, &'static [u64])];

/// Multisets of `H_2` by size.
const SECOND_HOMOLOGY: &[(usize, Multiset)] = &[
    (4, &[(1, &[2])]),
    (6, &[(1, &[2]), (1, &[4])]),
    (8, &[(3, &[])]),
    (9, &[(5, &[]), (3, &[3])]),
    (10, &[(1, &[2])]),
    (
        12,
        &[
            (3, &[2]),
            (1, &[10]),
            (2, &[4]),
            (1, &[2, 4]),
            (1, &[2, 2, 2]),
            (1, &[4, 4]),
            (1, &[6]),
        ],
    ),
    (15, &[(3, &[]), (1, &[2, 2]), (2, &[5]), (1, &[2])]),
    (
        16,
        &[
            (2, &[4]),
            (1, &[2, 2, 2, 2]),
            (2, &[2, 2]),
            (2, &[2]),
            (2, &[]),
        ],
    ),
    (18, &[(4, &[6]), (3, &[2]), (3, &[4]), (2, &[12])]),
    (
        20,
        &[(3, &[6]), (3, &[2]), (2, &[2, 2]), (1, &[2, 4]), (1, &[4])],
    ),
    (21, &[(5, &[]), (1, &[2, 2]), (2, &[7]), (1, &[2])]),
];

fn build(b: &Build) -> Result<RackTable, CliError> {
    Ok(match *b {
        Build::Dihedral(n) => dihedral_quandle(n)?,
        Build::Affine(n, t) => affine_quandle_zn(n, t)?,
        Build::Conj {
            alternating,
            degree,
            rep,
        } => {
            let g = if alternating {
                PermGroup::alternating(degree)
            } else {
                PermGroup::symmetric(degree)
            };
            conjugation_rack(&g, &[parse_cycles(rep, degree)?])?
        }
    })
}

fn expected_homology(rows: &[(usize, &[u64])]) -> Vec<HomologyResult> {
    let mut out: Vec<HomologyResult> = rows
        .iter()
        .flat_map(|&(k, t)| std::iter::repeat_n(HomologyResult::new(1, t), k))
        .collect();
    out.sort();
    out
}

fn show(v: &[HomologyResult]) -> String {
    v.iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

struct Report {
    out: String,
    failed: bool,
}

impl Report {
    fn line(&mut self, ok: Option<bool>, text: String) {
        let tag = match ok {
            Some(true) => "PASS",
            Some(false) => {
                self.failed = true;
                "FAIL"
            }
            None => "SKIPPED",
        };
        self.out.push_str(&format!("{tag} {text}\n"));
    }
}

/// One line per table row; the flag is set when any row fails.
pub fn verify(groups: Option<&Path>) -> Result<(String, bool), CliError> {
    let mut r = Report {
        out: String::new(),
        failed: false,
    };

    for (name, b, inn, env) in ENVELOPING {
        let x = build(b)?;
        let got_inn = x.inner_group().order().to_string();
        let got_env = finite_enveloping_order(&x)?;
        let ok = got_inn == inn.to_string() && got_env as u64 == *env;
        r.line(
            Some(ok),
            format!("orders, {name}: |Inn| = {got_inn}, |env| = {got_env} (expected {inn}, {env})"),
        );
    }

    let mut records: BTreeMap<usize, Vec<QuandleRecord>> = BTreeMap::new();
    for (i, &expected) in Q.iter().enumerate() {
        let n = i + 1;
        let recs = if n == 1 {
            Some(classify_indecomposable(
                1,
                &quandleforge::classify::GroupDatabase::new(1, Vec::new()),
            )?)
        } else {
            match group_database(n, groups)? {
                Some(db) => Some(classify_indecomposable(n, &db)?),
                None => None,
            }
        };
        match recs {
            Some(recs) => {
                let got = recs.len();
                r.line(
                    Some(got == expected),
                    format!("count, q({n}) = {got} (expected {expected})"),
                );
                records.insert(n, recs);
            }
            None => r.line(None, format!("count, q({n}): no group data")),
        }
    }

    for &(n, rows) in SECOND_HOMOLOGY {
        let expected = expected_homology(rows);
        let Some(recs) = records.get(&n) else {
            r.line(None, format!("H2, size {n}: no classification"));
            continue;
        };
        let mut got = recs
            .iter()
            .map(|rec| rack_homology(&rec.table, 2))
            .collect::<Result<Vec<_>, _>>()?;
        got.sort();
        let ok = got == expected;
        let text = if ok {
            format!("H2, size {n}: {}", show(&got))
        } else {
            format!(
                "H2, size {n}: {} (expected {})",
                show(&got),
                show(&expected)
            )
        };
        r.line(Some(ok), text);
    }
    Ok((r.out, r.failed))
}
