use std::fmt;

use thiserror::Error;

use crate::perm::{PermGroup, Permutation};

/// Reasons a table is not a rack. Row, column and element numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error("a rack needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at row {row}, column {col} is outside 1..={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("row {row} is not a bijection")]
    RowNotBijective { row: usize },
    #[error("self-distributivity fails for i={i}, j={j}, k={k}")]
    NotSelfDistributive { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] RackError),
}

/// A validated finite rack, `get(i, j) = i ▷ j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RackTable {
    n: usize,
    data: Vec<u32>,
}

impl RackTable {
    /// Validates a 0-based row-major table.
    pub fn from_data(n: usize, data: Vec<u32>) -> Result<Self, RackError> {
        if n == 0 {
            return Err(RackError::Empty);
        }
        assert_eq!(data.len(), n * n, "table data must have n*n entries");
        for (idx, &v) in data.iter().enumerate() {
            if v as usize >= n {
                return Err(RackError::EntryOutOfRange {
                    row: idx / n + 1,
                    col: idx % n + 1,
                    value: v as usize + 1,
                    n,
                });
            }
        }
        let t = RackTable { n, data };
        t.check_axioms()?;
        Ok(t)
    }

    /// Builds and validates `f(i, j) = i ▷ j` over 0-based labels.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, RackError> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if v >= n {
                    return Err(RackError::EntryOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value: v + 1,
                        n,
                    });
                }
                data.push(v as u32);
            }
        }
        Self::from_data(n, data)
    }

    /// Validates a matrix with 1-based entries, as printed.
    pub fn validate(rows: &[Vec<usize>]) -> Result<Self, RackError> {
        let n = rows.len();
        if n == 0 {
            return Err(RackError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(RackError::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(RackError::EntryOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                        n,
                    });
                }
                data.push((v - 1) as u32);
            }
        }
        Self::from_data(n, data)
    }

    pub(crate) fn from_data_unchecked(n: usize, data: Vec<u32>) -> Self {
        RackTable { n, data }
    }

    fn check_axioms(&self) -> Result<(), RackError> {
        let n = self.n;
        for i in 0..n {
            let mut seen = vec![false; n];
            for &v in self.row(i) {
                if seen[v as usize] {
                    return Err(RackError::RowNotBijective { row: i + 1 });
                }
                seen[v as usize] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                for k in 0..n {
                    if self.get(i, self.get(j, k)) != self.get(ij, self.get(i, k)) {
                        return Err(RackError::NotSelfDistributive {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    /// `i ▷ j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.n + j] as usize
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    /// Rows with 1-based entries.
    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&v| v as usize + 1).collect())
            .collect()
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == i)
    }

    /// The translation `φ_i : x ↦ i ▷ x`.
    pub fn translation(&self, i: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(i).to_vec())
    }

    pub fn translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|i| self.translation(i)).collect()
    }

    /// Inverse translation `φ_i^-1`.
    pub fn inverse_translation(&self, i: usize) -> Vec<u32> {
        let mut inv = vec![0u32; self.n];
        for (x, &y) in self.row(i).iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        inv
    }

    /// `Inn(X)`, generated by all translations.
    pub fn inner_group(&self) -> PermGroup {
        PermGroup::new(self.n, self.translations())
    }

    /// Orbits of the inner group, each ascending, ordered by minimum.
    pub fn components(&self) -> ComponentPartition {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        for i in 0..n {
            for j in 0..n {
                let a = find(&mut parent, j);
                let b = find(&mut parent, self.get(i, j));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(x);
        }
        ComponentPartition { blocks }
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().blocks.len() == 1
    }

    /// Smallest subrack containing `seed`: closed under `a ▷ b` and
    /// `φ_a^-1(b)`. Returns the ascending element list.
    pub fn subrack_closure(&self, seed: &[usize]) -> Vec<usize> {
        let n = self.n;
        let mut inside = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let inverses: Vec<Vec<u32>> = (0..n).map(|i| self.inverse_translation(i)).collect();
        let mut done = 0;
        // every pair (a, b) with max(index) >= done is processed once
        while done < members.len() {
            let new = members[done];
            let mut k = 0;
            while k <= done {
                let other = members[k];
                for (a, b) in [(new, other), (other, new)] {
                    for c in [self.get(a, b), inverses[a][b] as usize] {
                        if !inside[c] {
                            inside[c] = true;
                            members.push(c);
                        }
                    }
                }
                k += 1;
            }
            done += 1;
        }
        members.sort_unstable();
        members
    }

    /// The rack induced on `elements` (ascending), relabeled `0..len` in
    /// that order. Returns `None` if the subset is not closed.
    pub fn induced(&self, elements: &[usize]) -> Option<RackTable> {
        let m = elements.len();
        if m == 0 {
            return None;
        }
        let mut index = vec![u32::MAX; self.n];
        for (k, &e) in elements.iter().enumerate() {
            index[e] = k as u32;
        }
        let mut data = Vec::with_capacity(m * m);
        for &a in elements {
            for &b in elements {
                let c = index[self.get(a, b)];
                if c == u32::MAX {
                    return None;
                }
                data.push(c);
            }
        }
        RackTable::from_data(m, data).ok()
    }

    /// `j ▷ i = i` whenever `i ▷ j = j`; only meaningful for quandles.
    pub fn is_crossed_set(&self) -> bool {
        if !self.is_quandle() {
            return false;
        }
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) != j || self.get(j, i) == i))
    }

    /// Whether `i ↦ φ_i` is injective.
    pub fn is_faithful(&self) -> bool {
        let mut rows: Vec<&[u32]> = (0..self.n).map(|i| self.row(i)).collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// The isomorphic table `Y` with `Y[σi][σj] = σ(X[i][j])`.
    pub fn relabel(&self, sigma: &Permutation) -> RackTable {
        let n = self.n;
        assert_eq!(sigma.degree(), n);
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                data[sigma.apply(i) * n + sigma.apply(j)] = sigma.apply(self.get(i, j)) as u32;
            }
        }
        RackTable { n, data }
    }

    /// Whether `f` satisfies `f(i ▷ j) = f(i) ▷ f(j)` from `self` to `other`.
    pub fn is_morphism_to(&self, other: &RackTable, f: &[usize]) -> bool {
        let n = self.n;
        f.len() == n && (0..n).all(|i| (0..n).all(|j| f[self.get(i, j)] == other.get(f[i], f[j])))
    }

    /// Text format: the size on the first line, then one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|&v| (v + 1).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, TableParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let table = parse_table_lines(&mut lines)?;
        if let Some((ln, _)) = lines.next() {
            return Err(TableParseError::Syntax {
                line: ln + 1,
                msg: "trailing content after table".into(),
            });
        }
        Ok(table)
    }
}

/// Reads one table (size line plus rows) from a line iterator of
/// `(0-based line number, text)` pairs.
pub(crate) fn parse_table_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<RackTable, TableParseError> {
    let (ln, first) = lines.next().ok_or(TableParseError::Syntax {
        line: 1,
        msg: "missing size line".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| TableParseError::Syntax {
        line: ln + 1,
        msg: format!("expected table size, found {:?}", first.trim()),
    })?;
    if n == 0 {
        return Err(RackError::Empty.into());
    }
    if n > 4096 {
        return Err(TableParseError::Syntax {
            line: ln + 1,
            msg: format!("table size {n} is too large"),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = ln;
    for r in 0..n {
        let (ln, line) = lines.next().ok_or(TableParseError::Syntax {
            line: last + 2,
            msg: format!("expected row {} of {}", r + 1, n),
        })?;
        last = ln;
        let row: Result<Vec<usize>, _> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect();
        let row = row.map_err(|_| TableParseError::Syntax {
            line: ln + 1,
            msg: "non-integer entry".into(),
        })?;
        if row.len() != n {
            return Err(TableParseError::Syntax {
                line: ln + 1,
                msg: format!("expected {} entries, found {}", n, row.len()),
            });
        }
        rows.push(row);
    }
    Ok(RackTable::validate(&rows)?)
}

impl PartialOrd for RackTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Size first, then row-major lexicographic.
impl Ord for RackTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.data.cmp(&other.data))
    }
}

impl fmt::Debug for RackTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RackTable{:?}", self.rows_one_based())
    }
}

impl fmt::Display for RackTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The components of a rack: the orbits of its inner group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }

    /// GAP-style listing with 1-based points, e.g. `[ [ 1, 3 ], [ 2, 4 ] ]`.
    pub fn to_one_based_string(&self) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
                format!("[ {} ]", pts.join(", "))
            })
            .collect();
        format!("[ {} ]", blocks.join(", "))
    }
}
