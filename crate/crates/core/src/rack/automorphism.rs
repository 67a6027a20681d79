use super::iso::extend_isomorphism;
use super::RackTable;
use crate::perm::{PermGroup, Permutation};

/// The automorphism group of `x`.
///
/// An automorphism is fixed by its values on a generating sequence
/// `g_1, ..., g_k`. Working from the last level up, every image of `g_i`
/// outside the known orbit is tried with `g_1, ..., g_{i-1}` fixed, and
/// each automorphism found is kept as a generator.
pub fn automorphism_group(x: &RackTable) -> PermGroup {
    let n = x.size();
    let seq = generating_sequence(x);
    let mut gens: Vec<Permutation> = Vec::new();
    for i in (0..seq.len()).rev() {
        let mut pairs: Vec<(usize, usize)> = seq[..i].iter().map(|&g| (g, g)).collect();
        pairs.push((seq[i], seq[i]));
        let mut orbit = orbit_mask(n, seq[i], &gens);
        for b in 0..n {
            if orbit[b] {
                continue;
            }
            pairs[i].1 = b;
            if let Some(g) = extend_isomorphism(x, x, &pairs) {
                gens.push(g);
                orbit = orbit_mask(n, seq[i], &gens);
            }
        }
    }
    PermGroup::new(n, gens)
}

fn generating_sequence(x: &RackTable) -> Vec<usize> {
    let n = x.size();
    let mut seq = Vec::new();
    let mut covered = vec![false; n];
    for e in 0..n {
        if covered[e] {
            continue;
        }
        seq.push(e);
        for c in x.subrack_closure(&seq) {
            covered[c] = true;
        }
    }
    seq
}

fn orbit_mask(n: usize, p: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[p] = true;
    let mut stack = vec![p];
    while let Some(a) = stack.pop() {
        for g in gens {
            let b = g.apply(a);
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn count_brute(x: &RackTable) -> usize {
        let n = x.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if x.is_morphism_to(x, &perm) {
                count += 1;
            }
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return count;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn orders_match_exhaustive_count() {
        let racks = [
            RackTable::from_fn(5, |i, j| (2 * i + 5 - j) % 5).unwrap(),
            RackTable::from_fn(6, |_, j| j).unwrap(),
            RackTable::from_fn(7, |i, j| (3 * j + 5 * i) % 7).unwrap(),
            RackTable::from_fn(6, |i, j| {
                if (i < 3) == (j < 3) {
                    j
                } else {
                    (j + 1) % 3 + 3 * (j / 3)
                }
            })
            .unwrap(),
        ];
        for x in &racks {
            let g = automorphism_group(x);
            assert!(g.generators().iter().all(|s| x.relabel(s) == *x));
            assert_eq!(g.order(), BigUint::from(count_brute(x)));
        }
    }
}
