use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::dense_invariant_factors;

/// Sparse integer vector, sorted by index, no zero entries.
pub(crate) type SparseVec = Vec<(u32, i64)>;

/// Nonzero invariant factors of the matrix whose rows are `vectors` (each
/// of length `width`), ascending.
///
/// Entries equal to ±1 are used as pivots first: the pivot row clears its
/// column from every other row, after which that row and column only
/// contribute a factor 1. What is left goes through the dense algorithm.
pub(crate) fn invariant_factors(vectors: Vec<SparseVec>, width: usize) -> Vec<BigInt> {
    match eliminate_units(vectors.clone(), width) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::from(1); units];
            out.extend(dense_remainder(rest));
            out
        }
        None => dense_remainder(vectors),
    }
}

fn dense_remainder(vectors: Vec<SparseVec>) -> Vec<BigInt> {
    let mut used: Vec<u32> = vectors.iter().flatten().map(|&(c, _)| c).collect();
    used.sort_unstable();
    used.dedup();
    let rows: Vec<&SparseVec> = vectors.iter().filter(|v| !v.is_empty()).collect();
    if rows.is_empty() || used.is_empty() {
        return Vec::new();
    }
    let mut dense = vec![vec![BigInt::zero(); used.len()]; rows.len()];
    for (i, v) in rows.iter().enumerate() {
        for &(c, x) in v.iter() {
            let j = used.binary_search(&c).unwrap();
            dense[i][j] = BigInt::from(x);
        }
    }
    let (r, c) = (rows.len(), used.len());
    dense_invariant_factors(dense, r, c)
}

/// `a + k * b`, or `None` on overflow.
fn axpy(a: &SparseVec, k: i64, b: &SparseVec) -> Option<SparseVec> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else {
            let kb = k.checked_mul(b[j].1)?;
            let v = if ca == cb {
                let v = a[i].1.checked_add(kb)?;
                i += 1;
                v
            } else {
                kb
            };
            j += 1;
            if v != 0 {
                out.push((cb, v));
            }
        }
    }
    Some(out)
}

/// Number of unit pivots and the remaining rows, or `None` on overflow.
fn eliminate_units(mut rows: Vec<SparseVec>, width: usize) -> Option<(usize, Vec<SparseVec>)> {
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); width];
    let mut count = vec![0usize; width];
    for (r, v) in rows.iter().enumerate() {
        for &(c, _) in v {
            members[c as usize].push(r as u32);
            count[c as usize] += 1;
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut units = 0;
    loop {
        // unit entry with the smallest fill estimate
        let mut best: Option<(usize, usize, u32)> = None;
        for (r, v) in rows.iter().enumerate() {
            if !alive[r] {
                continue;
            }
            for &(c, x) in v {
                if x.abs() != 1 {
                    continue;
                }
                let cost = (v.len() - 1) * (count[c as usize] - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, r, c));
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else {
            break;
        };
        let pivot_row = std::mem::take(&mut rows[pr]);
        alive[pr] = false;
        let px = pivot_row.iter().find(|e| e.0 == pc).unwrap().1;
        for &(c, _) in &pivot_row {
            count[c as usize] -= 1;
        }
        let others = std::mem::take(&mut members[pc as usize]);
        for &r in &others {
            let r = r as usize;
            if !alive[r] {
                continue;
            }
            let Some(x) = rows[r].iter().find(|e| e.0 == pc).map(|e| e.1) else {
                continue;
            };
            let before: Vec<u32> = rows[r].iter().map(|e| e.0).collect();
            let updated = axpy(&rows[r], x.checked_mul(px)?.checked_neg()?, &pivot_row)?;
            for &(c, _) in &updated {
                if before.binary_search(&c).is_err() {
                    members[c as usize].push(r as u32);
                    count[c as usize] += 1;
                }
            }
            for &c in &before {
                if updated.binary_search_by_key(&c, |e| e.0).is_err() {
                    count[c as usize] -= 1;
                }
            }
            rows[r] = updated;
        }
        units += 1;
    }
    let rest = rows
        .into_iter()
        .zip(alive)
        .filter(|(v, a)| *a && !v.is_empty())
        .map(|(v, _)| v)
        .collect();
    Some((units, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::matrix::{smith_normal_form, IntMatrix};
    use rand::{Rng, SeedableRng};

    #[test]
    fn agrees_with_dense() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let r = rng.gen_range(1..12);
            let c = rng.gen_range(1..12);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| {
                            if rng.gen_bool(0.6) {
                                0
                            } else {
                                rng.gen_range(-3..=3)
                            }
                        })
                        .collect()
                })
                .collect();
            let sparse: Vec<SparseVec> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(j, &x)| (j as u32, x))
                        .collect()
                })
                .collect();
            let (d, _, _) = smith_normal_form(&IntMatrix::from_rows(&rows));
            let expected: Vec<BigInt> = d.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(invariant_factors(sparse, c), expected, "{rows:?}");
        }
    }
}
