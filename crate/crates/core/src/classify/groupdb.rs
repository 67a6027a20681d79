use std::fmt::Write as _;
use std::path::Path;

use super::ClassifyError;
use crate::perm::{parse_generator_list, PermGroup};

const MAX_DEGREE: usize = 4096;

/// Transitive groups of one degree.
///
/// Text format: one group per line, `degree; gen1, gen2, ...` with
/// generators in 1-based cycle notation. Blank lines and lines starting
/// with `#` are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDatabase {
    degree: usize,
    groups: Vec<PermGroup>,
}

impl GroupDatabase {
    pub fn new(degree: usize, groups: Vec<PermGroup>) -> Self {
        GroupDatabase { degree, groups }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn groups(&self) -> &[PermGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Parses the text format. Every entry must be transitive and all
    /// entries must share one degree.
    pub fn parse(text: &str) -> Result<Self, ClassifyError> {
        let mut degree = None;
        let mut groups = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_no = ln + 1;
            let (d, gens) = line.split_once(';').ok_or_else(|| ClassifyError::Syntax {
                line: line_no,
                msg: "expected `degree; generators`".into(),
            })?;
            let d: usize = d.trim().parse().map_err(|_| ClassifyError::Syntax {
                line: line_no,
                msg: format!("bad degree {:?}", d.trim()),
            })?;
            if d == 0 || d > MAX_DEGREE {
                return Err(ClassifyError::Syntax {
                    line: line_no,
                    msg: format!("degree must be in 1..={MAX_DEGREE}"),
                });
            }
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(ClassifyError::DegreeMismatch {
                        expected: e,
                        found: d,
                    })
                }
                _ => {}
            }
            let gens = parse_generator_list(gens.trim(), d).map_err(|source| {
                ClassifyError::Generators {
                    line: line_no,
                    source,
                }
            })?;
            let g = PermGroup::new(d, gens);
            if !g.is_transitive() {
                return Err(ClassifyError::NotTransitive { line: line_no });
            }
            groups.push(g);
        }
        let degree = degree.ok_or(ClassifyError::Syntax {
            line: 0,
            msg: "no groups in database".into(),
        })?;
        Ok(GroupDatabase { degree, groups })
    }

    pub fn read(path: &Path) -> Result<Self, ClassifyError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# transitive groups of degree {}\n", self.degree);
        for g in &self.groups {
            let gens: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
            let gens = if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join(", ")
            };
            writeln!(s, "{}; {}", self.degree, gens).unwrap();
        }
        s
    }
}
