use super::RackTable;
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Per-element isomorphism invariant: cycle type of `φ_i`, how many `j`
/// fix `i` (`j ▷ i = i`), and whether `i ▷ i = i`.
fn element_invariant(x: &RackTable, i: usize) -> (Vec<usize>, usize, bool) {
    let n = x.size();
    let fixers = (0..n).filter(|&j| x.get(j, i) == i).count();
    (x.translation(i).cycle_type(), fixers, x.get(i, i) == i)
}

/// Some `σ` with `y[σi][σj] = σ(x[i][j])`, or `None` if the racks are not
/// isomorphic (including when their sizes differ).
///
/// Elements are mapped one at a time, rarest invariant class first; each
/// new pair is closed under the operation so a morphism is usually forced
/// after a couple of choices.
pub fn find_isomorphism(x: &RackTable, y: &RackTable) -> Option<Permutation> {
    extend_isomorphism(x, y, &[])
}

/// An isomorphism sending `a ↦ b` for every pair in `fixed`, if any.
pub(crate) fn extend_isomorphism(
    x: &RackTable,
    y: &RackTable,
    fixed: &[(usize, usize)],
) -> Option<Permutation> {
    let n = x.size();
    if y.size() != n {
        return None;
    }
    let inv_x: Vec<_> = (0..n).map(|i| element_invariant(x, i)).collect();
    let inv_y: Vec<_> = (0..n).map(|i| element_invariant(y, i)).collect();
    let mut sx = inv_x.clone();
    let mut sy = inv_y.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return None;
    }
    // class id per element, shared between x and y
    sx.dedup();
    let class_x: Vec<usize> = inv_x.iter().map(|v| sx.binary_search(v).unwrap()).collect();
    let class_y: Vec<usize> = inv_y.iter().map(|v| sx.binary_search(v).unwrap()).collect();
    let mut class_size = vec![0usize; sx.len()];
    for &c in &class_x {
        class_size[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (class_size[class_x[i]], class_x[i], i));

    let state = State {
        fwd: vec![NONE; n],
        bwd: vec![NONE; n],
        mapped: Vec::new(),
    };
    let ctx = Ctx {
        x,
        y,
        class_x: &class_x,
        class_y: &class_y,
        order: &order,
    };
    let mut state = state;
    for &(a, b) in fixed {
        if !ctx.extend(&mut state, a, b) {
            return None;
        }
    }
    let f = ctx.search(state)?;
    let images: Vec<u32> = f.fwd;
    let sigma = Permutation::from_images(images).expect("bijection");
    debug_assert!(x.relabel(&sigma) == *y);
    Some(sigma)
}

#[derive(Clone)]
struct State {
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    mapped: Vec<usize>,
}

struct Ctx<'a> {
    x: &'a RackTable,
    y: &'a RackTable,
    class_x: &'a [usize],
    class_y: &'a [usize],
    order: &'a [usize],
}

impl Ctx<'_> {
    fn search(&self, state: State) -> Option<State> {
        let Some(&a) = self.order.iter().find(|&&a| state.fwd[a] == NONE) else {
            return Some(state);
        };
        let n = self.x.size();
        for b in 0..n {
            if state.bwd[b] != NONE || self.class_y[b] != self.class_x[a] {
                continue;
            }
            let mut next = state.clone();
            if self.extend(&mut next, a, b) {
                if let Some(done) = self.search(next) {
                    return Some(done);
                }
            }
        }
        None
    }

    fn assign(&self, s: &mut State, a: usize, b: usize, queue: &mut Vec<usize>) -> bool {
        if s.fwd[a] != NONE {
            return s.fwd[a] as usize == b;
        }
        if s.bwd[b] != NONE || self.class_x[a] != self.class_y[b] {
            return false;
        }
        s.fwd[a] = b as u32;
        s.bwd[b] = a as u32;
        queue.push(a);
        true
    }

    /// Maps `a ↦ b` and closes the partial map under the operation.
    fn extend(&self, s: &mut State, a: usize, b: usize) -> bool {
        let mut queue = Vec::new();
        if !self.assign(s, a, b, &mut queue) {
            return false;
        }
        while let Some(p) = queue.pop() {
            s.mapped.push(p);
            let fp = s.fwd[p] as usize;
            let mut k = 0;
            while k < s.mapped.len() {
                let q = s.mapped[k];
                let fq = s.fwd[q] as usize;
                if !self.assign(s, self.x.get(p, q), self.y.get(fp, fq), &mut queue)
                    || !self.assign(s, self.x.get(q, p), self.y.get(fq, fp), &mut queue)
                {
                    return false;
                }
                k += 1;
            }
        }
        true
    }
}
