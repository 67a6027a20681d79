use std::collections::BTreeSet;

use crate::rack::{canonical_form, RackTable};

pub const MAX_BRUTE_FORCE_SIZE: usize = 8;

type Row = [u8; 8];

/// Indecomposable quandles of size `n` up to isomorphism, found without any
/// group-theoretic input. All translations of an indecomposable quandle are
/// conjugate, so the search fixes a cycle type, puts row 0 in a standard
/// form of that type, and fills the remaining rows with permutations of the
/// same type. `φ_{a▷b} = φ_a φ_b φ_a⁻¹` forces rows as soon as two are
/// known; a completed table whose rows satisfy it for all pairs is
/// self-distributive.
pub fn brute_force_indecomposable(n: usize) -> Option<Vec<RackTable>> {
    if n == 0 || n > MAX_BRUTE_FORCE_SIZE {
        return None;
    }
    let mut found = BTreeSet::new();
    for shape in partitions_with_fixed_point(n) {
        let row0 = standard_permutation(n, &shape);
        let cands: Vec<Vec<Row>> = (0..n).map(|i| candidates(n, i, &shape)).collect();
        let mut s = State {
            n,
            rows: vec![None; n],
            known: Vec::new(),
        };
        if !s.set(0, row0) {
            continue;
        }
        s.search(&cands, &mut found);
    }
    Some(found.into_iter().collect())
}

fn partitions_with_fixed_point(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n - 1, n - 1, &mut Vec::new(), &mut out);
    for p in &mut out {
        p.push(1);
        p.sort_unstable();
    }
    out
}

/// Fixed points first, then cycles of ascending length on consecutive
/// labels.
fn standard_permutation(n: usize, shape: &[usize]) -> Row {
    let mut r = [0u8; 8];
    let mut s = 0;
    for &len in shape {
        for t in 0..len {
            r[s + t] = (s + (t + 1) % len) as u8;
        }
        s += len;
    }
    debug_assert_eq!(s, n);
    r
}

fn cycle_shape(n: usize, r: &Row) -> Vec<usize> {
    let mut seen = [false; 8];
    let mut shape = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = r[j] as usize;
            len += 1;
        }
        shape.push(len);
    }
    shape.sort_unstable();
    shape
}

/// Permutations of the given cycle type fixing `i`.
fn candidates(n: usize, i: usize, shape: &[usize]) -> Vec<Row> {
    let others: Vec<u8> = (0..n as u8).filter(|&x| x as usize != i).collect();
    let mut out = Vec::new();
    let mut perm = others.clone();
    loop {
        let mut r = [0u8; 8];
        r[i] = i as u8;
        for (k, &x) in others.iter().enumerate() {
            r[x as usize] = perm[k];
        }
        if cycle_shape(n, &r) == shape {
            out.push(r);
        }
        let m = perm.len();
        let Some(a) = (0..m.saturating_sub(1))
            .rev()
            .find(|&a| perm[a] < perm[a + 1])
        else {
            break;
        };
        let b = (a + 1..m).rev().find(|&b| perm[b] > perm[a]).unwrap();
        perm.swap(a, b);
        perm[a + 1..].reverse();
    }
    out
}

#[derive(Clone)]
struct State {
    n: usize,
    rows: Vec<Option<(Row, Row)>>,
    known: Vec<usize>,
}

impl State {
    fn compose(&self, a: &Row, b: &Row) -> Row {
        let mut c = [0u8; 8];
        for i in 0..self.n {
            c[i] = a[b[i] as usize];
        }
        c
    }

    fn invert(&self, a: &Row) -> Row {
        let mut c = [0u8; 8];
        for i in 0..self.n {
            c[a[i] as usize] = i as u8;
        }
        c
    }

    /// Assigns row `i` and propagates every forced row.
    fn set(&mut self, i: usize, r: Row) -> bool {
        let mut queue = Vec::new();
        if !self.assign(i, r, &mut queue) {
            return false;
        }
        while let Some(a) = queue.pop() {
            let (pa, qa) = self.rows[a].unwrap();
            let mut k = 0;
            while k < self.known.len() {
                let b = self.known[k];
                k += 1;
                let (pb, qb) = self.rows[b].unwrap();
                // φ_{a▷b} = φ_a φ_b φ_a⁻¹ and φ_{a◁b} = φ_a⁻¹ φ_b φ_a, both ways round
                let forced = [
                    (pa[b] as usize, self.compose(&self.compose(&pa, &pb), &qa)),
                    (pb[a] as usize, self.compose(&self.compose(&pb, &pa), &qb)),
                    (qa[b] as usize, self.compose(&self.compose(&qa, &pb), &pa)),
                    (qb[a] as usize, self.compose(&self.compose(&qb, &pa), &pb)),
                ];
                for (c, row) in forced {
                    if !self.assign(c, row, &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, i: usize, r: Row, queue: &mut Vec<usize>) -> bool {
        match &self.rows[i] {
            Some((old, _)) => old[..self.n] == r[..self.n],
            None => {
                if r[i] as usize != i {
                    return false;
                }
                self.rows[i] = Some((r, self.invert(&r)));
                self.known.push(i);
                queue.push(i);
                true
            }
        }
    }

    fn search(&self, cands: &[Vec<Row>], found: &mut BTreeSet<RackTable>) {
        let Some(i) = (0..self.n).find(|&i| self.rows[i].is_none()) else {
            let n = self.n;
            let data: Vec<u32> = (0..n)
                .flat_map(|i| {
                    let (r, _) = self.rows[i].unwrap();
                    (0..n).map(move |j| r[j] as u32)
                })
                .collect();
            let t = RackTable::from_data(n, data).expect("completed tables are quandles");
            if t.is_indecomposable() {
                found.insert(canonical_form(&t));
            }
            return;
        };
        for &r in &cands[i] {
            let mut next = self.clone();
            if next.set(i, r) {
                next.search(cands, found);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms() {
        assert_eq!(standard_permutation(5, &[1, 2, 2])[..5], [0, 2, 1, 4, 3]);
        assert_eq!(partitions_with_fixed_point(4).len(), 3);
        assert_eq!(candidates(4, 0, &[1, 3]).len(), 2);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| brute_force_indecomposable(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 3, 2]);
        assert!(brute_force_indecomposable(9).is_none());
    }
}
