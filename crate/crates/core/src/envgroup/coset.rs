use super::{EnvGroupError, GroupPresentation, Letter};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// A coset table over the trivial subgroup.
///
/// Column `2g` holds the action of generator `g`, column `2g + 1` that of
/// its inverse. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Image of `coset` under one letter.
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset][column(letter)] as usize
    }

    /// Image of `coset` under a word, letters applied left to right.
    pub fn trace(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The permutation of cosets induced by generator `g`.
    pub fn generator_permutation(&self, g: usize) -> Permutation {
        Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect())
            .expect("closed coset table")
    }

    /// Whether every relator fixes every coset.
    pub fn satisfies(&self, p: &GroupPresentation) -> bool {
        (0..self.len()).all(|c| p.relators().iter().all(|w| self.trace(c, w) == c))
    }
}

fn column(letter: Letter) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inverse_column(c: usize) -> usize {
    c ^ 1
}

struct Enumeration {
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    width: usize,
    limit: usize,
    queue: Vec<u32>,
}

impl Enumeration {
    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, EnvGroupError> {
        if self.table.len() >= self.limit {
            return Err(EnvGroupError::TooManyCosets { limit: self.limit });
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.width]);
        self.parent.push(d);
        self.table[c as usize][col] = d;
        self.table[d as usize][inverse_column(col)] = c;
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let d = self.table[dead as usize][col];
                if d == NONE {
                    continue;
                }
                let inv = inverse_column(col);
                if self.table[d as usize][inv] == dead {
                    self.table[d as usize][inv] = NONE;
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let fwd = self.table[mu as usize][col];
                if fwd != NONE {
                    self.merge(nu, fwd);
                } else {
                    let back = self.table[nu as usize][inv];
                    if back != NONE {
                        self.merge(mu, back);
                    } else {
                        self.table[mu as usize][col] = nu;
                        self.table[nu as usize][inv] = mu;
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: u32, word: &[Letter]) -> Result<(), EnvGroupError> {
        if word.is_empty() {
            return Ok(());
        }
        let cols: Vec<usize> = word.iter().map(|&l| column(l)).collect();
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = cols.len() - 1;
        loop {
            while i <= j && self.table[f as usize][cols[i]] != NONE {
                f = self.table[f as usize][cols[i]];
                if i == j {
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                i += 1;
            }
            while j >= i && self.table[b as usize][inverse_column(cols[j])] != NONE {
                b = self.table[b as usize][inverse_column(cols[j])];
                if j == i {
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if i == j {
                self.table[f as usize][cols[i]] = b;
                self.table[b as usize][inverse_column(cols[i])] = f;
                return Ok(());
            }
            self.define(f, cols[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, failing once more than
/// `max_cosets` cosets have been defined.
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: usize) -> Result<CosetTable, EnvGroupError> {
    let width = 2 * p.generators();
    if max_cosets == 0 {
        return Err(EnvGroupError::TooManyCosets { limit: 0 });
    }
    let mut e = Enumeration {
        table: vec![vec![NONE; width]],
        parent: vec![0],
        width,
        limit: max_cosets,
        queue: Vec::new(),
    };
    let mut alpha = 0u32;
    while (alpha as usize) < e.table.len() {
        for w in p.relators() {
            if !e.live(alpha) {
                break;
            }
            e.scan_and_fill(alpha, w)?;
        }
        for col in 0..width {
            if !e.live(alpha) {
                break;
            }
            if e.table[alpha as usize][col] == NONE {
                e.define(alpha, col)?;
            }
        }
        alpha += 1;
    }

    let mut index = vec![NONE; e.table.len()];
    let mut next = 0u32;
    for c in 0..e.table.len() as u32 {
        if e.live(c) {
            index[c as usize] = next;
            next += 1;
        }
    }
    let rows = (0..e.table.len())
        .filter(|&c| e.live(c as u32))
        .map(|c| e.table[c].iter().map(|&d| index[d as usize]).collect())
        .collect();
    Ok(CosetTable {
        generators: p.generators(),
        rows,
    })
}
