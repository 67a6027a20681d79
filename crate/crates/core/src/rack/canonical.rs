use std::cmp::Ordering;

use super::{automorphism_group, RackTable};
use crate::perm::{PermGroup, Permutation};

const NONE: u32 = u32::MAX;

/// The lexicographically smallest (row-major) table among all relabelings
/// of `x`.
pub fn canonical_form(x: &RackTable) -> RackTable {
    canonical_labeling(x).0
}

/// Canonical form together with a relabeling `σ` such that
/// `x.relabel(&σ) == canonical`.
///
/// With `x0` given label 0, the smallest possible row 0 lists the cycle of
/// `φ_x0` through `x0` first and then the other cycles by increasing
/// length, each cycle on a block of consecutive labels. Only the
/// assignment of cycles (and their rotations) to blocks is searched.
///
/// Entries from row 1 on are filled in row-major order. An element that
/// appears without a label takes the start of the lowest free block of its
/// cycle length, the only way to get the smallest value there. When a
/// block has to be filled, only candidates giving the smallest entry are
/// kept. A block whose entry does not depend on which cycle fills it is
/// left open. One `x0` per orbit of the automorphism group is tried, and
/// of the block choices in one orbit of the subgroup fixing every labeled
/// element only the first is explored.
pub fn canonical_labeling(x: &RackTable) -> (RackTable, Permutation) {
    let n = x.size();
    let aut = automorphism_group(x);
    let patterns: Vec<Vec<u32>> = (0..n).map(|e| row0_pattern(x, e)).collect();
    let min = patterns.iter().min().expect("non-empty rack").clone();
    let mut best: Option<Vec<u32>> = None;
    let mut best_label = Vec::new();
    for orbit in aut.orbits() {
        let x0 = orbit[0];
        if patterns[x0] != min {
            continue;
        }
        let mut search = Search::new(x, &aut, x0, min.clone(), best.take(), best_label);
        search.run();
        best = search.best;
        best_label = search.best_label;
    }
    let data = best.expect("some element attains the minimal row");
    let sigma = Permutation::from_images(best_label).expect("labeling is a bijection");
    (RackTable::from_data_unchecked(n, data), sigma)
}

/// Cycles of `φ_e`, the one through `e` first (starting at `e`), the rest
/// by increasing length.
fn ordered_cycles(x: &RackTable, e: usize) -> Vec<Vec<u32>> {
    let n = x.size();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for s in std::iter::once(e).chain(0..n) {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut y = s;
        while !seen[y] {
            seen[y] = true;
            c.push(y as u32);
            y = x.get(e, y);
        }
        cycles.push(c);
    }
    cycles[1..].sort_by_key(|c| c.len());
    cycles
}

fn row0_pattern(x: &RackTable, e: usize) -> Vec<u32> {
    let mut row = Vec::with_capacity(x.size());
    let mut start = 0u32;
    for c in ordered_cycles(x, e) {
        let len = c.len() as u32;
        for k in 0..len {
            row.push(start + (k + 1) % len);
        }
        start += len;
    }
    row
}

struct Search<'a> {
    x: &'a RackTable,
    n: usize,
    aut: &'a PermGroup,
    /// Set once the automorphisms fixing the labeled elements are trivial.
    rigid: bool,
    cycles: Vec<Vec<u32>>,
    cycle_of: Vec<u32>,
    offset_of: Vec<u32>,
    /// `(start, len)` of each block of labels.
    blocks: Vec<(u32, u32)>,
    block_of_label: Vec<u32>,
    block_cycle: Vec<u32>,
    cycle_placed: Vec<bool>,
    label: Vec<u32>,
    elem: Vec<u32>,
    row0: Vec<u32>,
    best: Option<Vec<u32>>,
    best_label: Vec<u32>,
    /// Bumped whenever `best` improves.
    generation: u64,
    scratch: Vec<u32>,
}

/// `Some(g)`: the prefix is below the best table of generation `g`.
/// `None`: the prefix equals the best table's prefix. Every active branch
/// shares its prefix with a newly found best, so a stale `Some` reads as
/// `None`.
type Below = Option<u64>;

impl<'a> Search<'a> {
    fn new(
        x: &'a RackTable,
        aut: &'a PermGroup,
        x0: usize,
        row0: Vec<u32>,
        best: Option<Vec<u32>>,
        best_label: Vec<u32>,
    ) -> Self {
        let n = x.size();
        let cycles = ordered_cycles(x, x0);
        let mut cycle_of = vec![0; n];
        let mut offset_of = vec![0; n];
        let mut blocks = Vec::new();
        let mut block_of_label = vec![0; n];
        let mut start = 0u32;
        for (i, c) in cycles.iter().enumerate() {
            for (k, &e) in c.iter().enumerate() {
                cycle_of[e as usize] = i as u32;
                offset_of[e as usize] = k as u32;
                block_of_label[start as usize + k] = i as u32;
            }
            blocks.push((start, c.len() as u32));
            start += c.len() as u32;
        }
        let k = cycles.len();
        let mut s = Search {
            x,
            n,
            aut,
            rigid: aut.is_trivial(),
            cycles,
            cycle_of,
            offset_of,
            blocks,
            block_of_label,
            block_cycle: vec![NONE; k],
            cycle_placed: vec![false; k],
            label: vec![NONE; n],
            elem: vec![NONE; n],
            row0,
            best,
            best_label,
            generation: 0,
            scratch: vec![0; n * n],
        };
        // block 0 holds the cycle of x0, starting at x0
        s.place(0, 0, 0);
        s
    }

    fn run(&mut self) {
        let n = self.n;
        let mut cmp: Below = None;
        for pos in 0..n {
            let v = self.row0[pos];
            match self.compare(pos, v, cmp) {
                None => return,
                Some(o) => cmp = o,
            }
            self.scratch[pos] = v;
        }
        self.step(n, cmp);
    }

    /// Puts cycle `c` on block `b`, element `rot` of the cycle first.
    fn place(&mut self, c: usize, b: usize, rot: usize) {
        let (start, len) = self.blocks[b];
        let cyc = &self.cycles[c];
        for k in 0..len as usize {
            let e = cyc[(rot + k) % len as usize];
            self.label[e as usize] = start + k as u32;
            self.elem[start as usize + k] = e;
        }
        self.block_cycle[b] = c as u32;
        self.cycle_placed[c] = true;
    }

    fn unplace(&mut self, b: usize) {
        let c = self.block_cycle[b] as usize;
        let (start, len) = self.blocks[b];
        for &e in &self.cycles[c] {
            self.label[e as usize] = NONE;
        }
        for k in 0..len as usize {
            self.elem[start as usize + k] = NONE;
        }
        self.block_cycle[b] = NONE;
        self.cycle_placed[c] = false;
    }

    fn lowest_free_block(&self, len: u32) -> usize {
        (0..self.blocks.len())
            .find(|&b| self.block_cycle[b] == NONE && self.blocks[b].1 == len)
            .expect("a free block for every unplaced cycle")
    }

    /// `d` such that `φ_er(y) = φ_x0^d(y)` for every `y` on an unplaced
    /// cycle of length `len`.
    fn uniform_shift(&self, er: usize, len: u32) -> Option<u32> {
        let mut shift = None;
        for (c, cyc) in self.cycles.iter().enumerate() {
            if self.cycle_placed[c] || cyc.len() as u32 != len {
                continue;
            }
            for &y in cyc {
                let w = self.x.get(er, y as usize);
                if self.cycle_of[w] as usize != c {
                    return None;
                }
                let d = (self.offset_of[w] + len - self.offset_of[y as usize]) % len;
                match shift {
                    None => shift = Some(d),
                    Some(s) if s != d => return None,
                    _ => {}
                }
            }
        }
        shift
    }

    /// Value of entry `(r, c)` of an open block, if it does not depend on
    /// which cycle fills the block.
    fn open_value(&self, er: usize, c: usize) -> Option<u32> {
        let b = self.block_of_label[c] as usize;
        let (start, len) = self.blocks[b];
        let d = self.uniform_shift(er, len)?;
        let k = c as u32 - start;
        Some(start + (k + d) % len)
    }

    /// Entry `pos` if it can be read off without choosing a block.
    fn peek(&self, pos: usize) -> Option<u32> {
        let (r, c) = (pos / self.n, pos % self.n);
        let er = self.elem[r];
        if er == NONE {
            return None;
        }
        let ec = self.elem[c];
        if ec == NONE {
            return self.open_value(er as usize, c);
        }
        let w = self.x.get(er as usize, ec as usize);
        if self.label[w] != NONE {
            return Some(self.label[w]);
        }
        let len = self.cycles[self.cycle_of[w] as usize].len() as u32;
        Some(self.blocks[self.lowest_free_block(len)].0)
    }

    /// State after writing `value` at `pos`, or `None` if the table is now
    /// above the best one.
    fn compare(&self, pos: usize, value: u32, cmp: Below) -> Option<Below> {
        if cmp == Some(self.generation) {
            return Some(cmp);
        }
        let Some(best) = &self.best else {
            return Some(Some(self.generation));
        };
        match value.cmp(&best[pos]) {
            Ordering::Greater => None,
            Ordering::Less => Some(Some(self.generation)),
            Ordering::Equal => Some(None),
        }
    }

    fn step(&mut self, pos: usize, cmp: Below) {
        let n = self.n;
        if pos == n * n {
            self.finish(cmp);
            return;
        }
        let (r, c) = (pos / n, pos % n);
        let er = self.elem[r];
        let needed = if er == NONE {
            Some(r)
        } else if self.elem[c] == NONE && self.open_value(er as usize, c).is_none() {
            Some(c)
        } else {
            None
        };
        if let Some(l) = needed {
            self.fill_block(self.block_of_label[l] as usize, pos, cmp);
            return;
        }
        let er = er as usize;
        let (value, placed) = if self.elem[c] == NONE {
            (self.open_value(er, c).unwrap(), None)
        } else {
            let w = self.x.get(er, self.elem[c] as usize);
            if self.label[w] == NONE {
                let cy = self.cycle_of[w] as usize;
                let b = self.lowest_free_block(self.cycles[cy].len() as u32);
                self.place(cy, b, self.offset_of[w] as usize);
                (self.label[w], Some(b))
            } else {
                (self.label[w], None)
            }
        };
        if let Some(o) = self.compare(pos, value, cmp) {
            self.scratch[pos] = value;
            self.step(pos + 1, o);
        }
        if let Some(b) = placed {
            self.unplace(b);
        }
    }

    /// Branches over the cycles and rotations that can fill block `b`,
    /// keeping those with the smallest entry at `pos` when it is known.
    fn fill_block(&mut self, b: usize, pos: usize, cmp: Below) {
        let len = self.blocks[b].1;
        let mut options: Vec<(usize, usize, Option<u32>)> = Vec::new();
        for c in 0..self.cycles.len() {
            if self.cycle_placed[c] || self.cycles[c].len() as u32 != len {
                continue;
            }
            for rot in 0..len as usize {
                self.place(c, b, rot);
                let v = self.peek(pos);
                self.unplace(b);
                options.push((c, rot, v));
            }
        }
        if options.iter().all(|o| o.2.is_some()) {
            let m = options.iter().map(|o| o.2).min().flatten();
            options.retain(|o| o.2 == m);
        }
        let was_rigid = self.rigid;
        let orbit = if options.len() > 1 && !self.rigid {
            let orbit = self.stabilizer_orbits();
            self.rigid = orbit.iter().enumerate().all(|(e, &o)| o == e);
            orbit
        } else {
            (0..self.n).collect()
        };
        let mut explored: Vec<usize> = Vec::new();
        for (c, rot, _) in options {
            let e = self.cycles[c][rot] as usize;
            if explored.iter().any(|&f| orbit[f] == orbit[e]) {
                continue;
            }
            explored.push(e);
            self.place(c, b, rot);
            self.step(pos, cmp);
            self.unplace(b);
        }
        self.rigid = was_rigid;
    }

    /// Orbit ids under the automorphisms fixing every labeled element.
    fn stabilizer_orbits(&self) -> Vec<usize> {
        let fixed: Vec<usize> = (0..self.n).filter(|&e| self.label[e] != NONE).collect();
        let mut id: Vec<usize> = (0..self.n).collect();
        for orbit in self.aut.pointwise_stabilizer(&fixed).orbits() {
            let first = orbit[0];
            for e in orbit {
                id[e] = first;
            }
        }
        id
    }

    fn finish(&mut self, cmp: Below) {
        if self.best.is_some() && cmp != Some(self.generation) {
            return;
        }
        self.best = Some(self.scratch.clone());
        self.generation += 1;
        // open blocks can take any matching cycle
        let mut filled = Vec::new();
        for b in 0..self.blocks.len() {
            if self.block_cycle[b] != NONE {
                continue;
            }
            let len = self.blocks[b].1 as usize;
            let c = (0..self.cycles.len())
                .find(|&c| !self.cycle_placed[c] && self.cycles[c].len() == len)
                .expect("cycle for open block");
            self.place(c, b, 0);
            filled.push(b);
        }
        self.best_label = self.label.clone();
        for b in filled {
            self.unplace(b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> RackTable {
        RackTable::from_fn(n, |i, j| (2 * i + n - j) % n).unwrap()
    }

    /// Minimum over all n! relabelings, for small n.
    fn brute_force(x: &RackTable) -> RackTable {
        let n = x.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<RackTable> = None;
        loop {
            let s = Permutation::from_images(perm.iter().map(|&v| v as u32).collect()).unwrap();
            let y = x.relabel(&s);
            if best.as_ref().is_none_or(|b| y.data() < b.data()) {
                best = Some(y);
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        best.unwrap()
    }

    #[test]
    fn matches_brute_force_minimum() {
        let cases = vec![
            d(3),
            d(4),
            d(5),
            d(6),
            RackTable::from_fn(5, |i, j| (4 * i + 2 * j) % 5).unwrap(),
            RackTable::from_fn(4, |_, j| j).unwrap(),
            RackTable::from_fn(4, |_, j| (j + 1) % 4).unwrap(),
            RackTable::from_fn(6, |i, j| if i % 2 == j % 2 { j } else { (j + 2) % 6 }).unwrap(),
        ];
        for x in cases {
            let (c, s) = canonical_labeling(&x);
            assert_eq!(c, brute_force(&x), "{:?}", x);
            assert_eq!(x.relabel(&s), c);
        }
    }

    #[test]
    fn trivial_quandle_is_fixed() {
        let t = RackTable::from_fn(12, |_, j| j).unwrap();
        assert_eq!(canonical_form(&t), t);
    }
    fn all_racks(n: usize) -> Vec<RackTable> {
        let mut rows: Vec<Vec<u32>> = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in rows {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k as u32);
                    next.push(q);
                }
            }
            rows = next;
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        'outer: loop {
            let data: Vec<u32> = idx.iter().flat_map(|&k| rows[k].iter().copied()).collect();
            if let Ok(t) = RackTable::from_data(n, data) {
                out.push(t);
            }
            for i in idx.iter_mut() {
                *i += 1;
                if *i < rows.len() {
                    continue 'outer;
                }
                *i = 0;
            }
            return out;
        }
    }

    fn disjoint_union(a: &RackTable, b: &RackTable) -> RackTable {
        let (m, k) = (a.size(), b.size());
        RackTable::from_fn(m + k, |i, j| match (i < m, j < m) {
            (true, true) => a.get(i, j),
            (false, false) => m + b.get(i - m, j - m),
            _ => j,
        })
        .unwrap()
    }

    #[test]
    fn matches_brute_force_on_every_small_rack() {
        for n in 1..=4 {
            for x in all_racks(n) {
                let (c, s) = canonical_labeling(&x);
                assert_eq!(c, brute_force(&x), "{x:?}");
                assert_eq!(x.relabel(&s), c);
            }
        }
    }

    #[test]
    fn matches_brute_force_on_larger_racks() {
        let aff = |n: usize, t: usize| {
            RackTable::from_fn(n, |i, j| (t * j + (n + 1 - t) * i) % n).unwrap()
        };
        let trivial = |n: usize| RackTable::from_fn(n, |_, j| j).unwrap();
        let cases = vec![
            aff(7, 3),
            d(7),
            d(8),
            disjoint_union(&d(3), &d(4)),
            disjoint_union(&trivial(2), &d(5)),
            disjoint_union(&d(3), &d(3)),
            disjoint_union(&aff(5, 2), &trivial(3)),
            disjoint_union(&d(4), &trivial(1)),
            RackTable::from_fn(8, |i, j| if i % 2 == j % 2 { j } else { (j + 2) % 8 }).unwrap(),
            RackTable::from_fn(7, |_, j| (j + 1) % 7).unwrap(),
        ];
        for x in cases {
            let (c, s) = canonical_labeling(&x);
            assert_eq!(c, brute_force(&x), "{x:?}");
            assert_eq!(x.relabel(&s), c);
        }
    }
}
