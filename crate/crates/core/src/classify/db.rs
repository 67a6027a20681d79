use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use super::{inner_order, ClassifyError};
use crate::rack::{canonical_form, parse_table_lines, RackTable};

const MAGIC: &str = "QDB1";
const CHECKSUM_PREFIX: &str = "checksum sha256:";

/// One indecomposable quandle with its position among the canonical tables
/// of its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleRecord {
    pub size: usize,
    pub index: usize,
    pub table: RackTable,
    pub inner_order: BigUint,
    pub crossed_set: bool,
    pub faithful: bool,
}

impl QuandleRecord {
    pub fn new(index: usize, table: RackTable) -> Self {
        QuandleRecord {
            size: table.size(),
            index,
            inner_order: inner_order(&table),
            crossed_set: table.is_crossed_set(),
            faithful: table.is_faithful(),
            table,
        }
    }
}

/// Classified quandles by size.
///
/// Text format: a `QDB1` line, then for each size a `[n count]` line
/// followed by `count` tables in the rack table format, then a final
/// `checksum sha256:<hex>` line hashing everything before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuandleDatabase {
    sections: BTreeMap<usize, Vec<QuandleRecord>>,
}

impl QuandleDatabase {
    pub fn insert(&mut self, n: usize, records: Vec<QuandleRecord>) {
        self.sections.insert(n, records);
    }

    pub fn records(&self, n: usize) -> Option<&[QuandleRecord]> {
        self.sections.get(&n).map(|v| v.as_slice())
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.sections.keys().copied()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{MAGIC}\n");
        for (n, recs) in &self.sections {
            writeln!(s, "[{} {}]", n, recs.len()).unwrap();
            for r in recs {
                s.push_str(&r.table.to_text());
            }
        }
        let digest = hex(&Sha256::digest(s.as_bytes()));
        writeln!(s, "{CHECKSUM_PREFIX}{digest}").unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Self, ClassifyError> {
        let first = text.lines().next().unwrap_or("");
        if first.trim() != MAGIC {
            return Err(ClassifyError::VersionMismatch(first.trim().to_string()));
        }
        let cut = text
            .match_indices(CHECKSUM_PREFIX)
            .map(|(i, _)| i)
            .filter(|&i| i == 0 || text.as_bytes()[i - 1] == b'\n')
            .last()
            .ok_or(ClassifyError::Checksum)?;
        let (body, tail) = text.split_at(cut);
        let stated = tail[CHECKSUM_PREFIX.len()..].trim();
        if stated != hex(&Sha256::digest(body.as_bytes())) {
            return Err(ClassifyError::Checksum);
        }

        let mut lines = body
            .lines()
            .enumerate()
            .skip(1)
            .filter(|(_, l)| !l.trim().is_empty());
        let mut db = QuandleDatabase::default();
        while let Some((ln, header)) = lines.next() {
            let (n, count) = parse_header(header).ok_or_else(|| ClassifyError::Syntax {
                line: ln + 1,
                msg: format!("expected `[n count]`, found {:?}", header.trim()),
            })?;
            if db.sections.contains_key(&n) {
                return Err(ClassifyError::Syntax {
                    line: ln + 1,
                    msg: format!("duplicate section for size {n}"),
                });
            }
            let mut recs: Vec<QuandleRecord> = Vec::with_capacity(count.min(1024));
            for index in 1..=count {
                let t = parse_table_lines(&mut lines)?;
                let bad = |msg: &str| ClassifyError::BadRecord {
                    n,
                    index,
                    msg: msg.to_string(),
                };
                if t.size() != n {
                    return Err(bad("size does not match its section"));
                }
                if !t.is_quandle() || !t.is_indecomposable() {
                    return Err(bad("not an indecomposable quandle"));
                }
                if canonical_form(&t) != t {
                    return Err(bad("table is not in canonical form"));
                }
                if recs.last().is_some_and(|prev| prev.table >= t) {
                    return Err(bad("tables are not in ascending order"));
                }
                recs.push(QuandleRecord::new(index, t));
            }
            db.sections.insert(n, recs);
        }
        Ok(db)
    }

    pub fn read(path: &Path) -> Result<Self, ClassifyError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), ClassifyError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let inner = line.trim().strip_prefix('[')?.strip_suffix(']')?;
    let mut parts = inner.split_whitespace();
    let n = parts.next()?.parse().ok()?;
    let count = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((n, count))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
