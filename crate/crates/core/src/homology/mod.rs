//! Integer homology of racks.
//!
//! Chains of degree `n` are integer combinations of `n`-tuples of rack
//! elements, indexed row-major (the first coordinate is most significant).
//! The boundary of `(x_1, ..., x_n)` is
//! `Σ_i (-1)^(i+1) [(x_1, ..., x̂_i, ..., x_n) - (x_1, ..., x_(i-1), x_i ▷ x_(i+1), ..., x_i ▷ x_n)]`.

mod matrix;
mod sparse;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rack::RackTable;

pub use matrix::{smith_normal_form, smith_with_inverses, solve_integer, IntMatrix, SmithForm};
use sparse::SparseVec;

/// Largest chain-group rank accepted, `|X|^(n+1)`.
pub const MAX_BASIS: u128 = 1 << 24;
/// Largest dense matrix (entries) built for torsion generators.
pub const MAX_DENSE_ENTRIES: u128 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary maps start in degree 1, got {0}")]
    DegreeTooSmall(usize),
    #[error("chain group of rank {size}^{exponent} exceeds the limit of {limit}")]
    TooLarge {
        size: usize,
        exponent: usize,
        limit: u128,
    },
}

/// `Z^betti × Z_(d_1) × ...` with `d_1 | d_2 | ...`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyResult {
    pub betti: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyResult {
    pub fn new(betti: usize, torsion: &[u64]) -> Self {
        HomologyResult {
            betti,
            torsion: torsion.iter().map(|&d| BigUint::from(d)).collect(),
        }
    }
}

/// Printed as `[ betti, [ d1, d2 ] ]`.
impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        if t.is_empty() {
            write!(f, "[ {}, [ ] ]", self.betti)
        } else {
            write!(f, "[ {}, [ {} ] ]", self.betti, t.join(", "))
        }
    }
}

/// An element of `C_n(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: usize,
    pub size: usize,
    pub coeffs: Vec<BigInt>,
}

impl ChainVector {
    pub fn zero(size: usize, degree: usize) -> Self {
        ChainVector {
            degree,
            size,
            coeffs: vec![BigInt::zero(); size.pow(degree as u32)],
        }
    }

    /// Tuple of basis element `index`, 0-based coordinates.
    pub fn tuple(&self, index: usize) -> Vec<usize> {
        decode(index, self.size, self.degree)
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        encode(tuple, self.size)
    }

    /// Nonzero coefficients with their 0-based tuples.
    pub fn support(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.tuple(i), c.clone()))
            .collect()
    }
}

/// Coefficient list, `[ c1, c2, ... ]`.
impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
        write!(f, "[ {} ]", c.join(", "))
    }
}

/// A torsion class of `H_n` of the given order, represented by a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGenerator {
    pub order: BigUint,
    pub cycle: ChainVector,
}

fn decode(mut index: usize, m: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = index % m;
        index /= m;
    }
    t
}

fn encode(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * m + x)
}

fn check_size(m: usize, exponent: usize) -> Result<(), HomologyError> {
    let too_large = HomologyError::TooLarge {
        size: m,
        exponent,
        limit: MAX_BASIS,
    };
    match (m as u128).checked_pow(exponent as u32) {
        Some(v) if v <= MAX_BASIS => Ok(()),
        _ => Err(too_large),
    }
}

/// Boundary of one basis tuple, sorted and merged.
fn boundary_of(x: &RackTable, tuple: &[usize]) -> SparseVec {
    let n = tuple.len();
    let m = x.size();
    let mut terms: Vec<(u32, i64)> = Vec::with_capacity(2 * n);
    let mut buf = Vec::with_capacity(n);
    for i in 0..n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        buf.clear();
        buf.extend(tuple[..i].iter().chain(&tuple[i + 1..]));
        terms.push((encode(&buf, m) as u32, sign));
        buf.clear();
        buf.extend(&tuple[..i]);
        buf.extend(tuple[i + 1..].iter().map(|&y| x.get(tuple[i], y)));
        terms.push((encode(&buf, m) as u32, -sign));
    }
    terms.sort_unstable();
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (k, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += v,
            _ => out.push((k, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Columns of `∂_n` as sparse vectors over the basis of `C_(n-1)`.
fn boundary_columns(x: &RackTable, n: usize) -> Vec<SparseVec> {
    let m = x.size();
    (0..m.pow(n as u32))
        .map(|idx| boundary_of(x, &decode(idx, m, n)))
        .collect()
}

/// Matrix of `∂_n : C_n → C_(n-1)`, of shape `|X|^(n-1) × |X|^n`.
pub fn boundary_matrix(x: &RackTable, n: usize) -> Result<IntMatrix, HomologyError> {
    if n < 1 {
        return Err(HomologyError::DegreeTooSmall(n));
    }
    check_size(x.size(), n)?;
    let m = x.size();
    let mut out = IntMatrix::zeros(m.pow(n as u32 - 1), m.pow(n as u32));
    for (j, col) in boundary_columns(x, n).into_iter().enumerate() {
        for (i, v) in col {
            out.set(i as usize, j, BigInt::from(v));
        }
    }
    Ok(out)
}

/// `(rank, invariant factors)` of `∂_n`; `∂_0` and `∂_1` vanish.
fn boundary_factors(x: &RackTable, n: usize) -> Vec<BigInt> {
    if n <= 1 {
        return Vec::new();
    }
    let m = x.size();
    sparse::invariant_factors(boundary_columns(x, n), m.pow(n as u32 - 1))
}

/// `H_n(X, Z)`.
///
/// The Betti number is `rank C_n - rank ∂_n - rank ∂_(n+1)` and the torsion
/// is given by the invariant factors of `∂_(n+1)` above 1, since the
/// cycles form a direct summand of `C_n`.
pub fn rack_homology(x: &RackTable, n: usize) -> Result<HomologyResult, HomologyError> {
    check_size(x.size(), n + 1)?;
    let dim = x.size().pow(n as u32);
    let rank_n = boundary_factors(x, n).len();
    let next = boundary_factors(x, n + 1);
    let torsion = next
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    Ok(HomologyResult {
        betti: dim - rank_n - next.len(),
        torsion,
    })
}

fn check_dense(m: usize, n: usize) -> Result<(), HomologyError> {
    check_size(m, n + 1)?;
    let entries = (m as u128).pow(n as u32) * (m as u128).pow(n as u32 + 1);
    if entries > MAX_DENSE_ENTRIES {
        return Err(HomologyError::TooLarge {
            size: m,
            exponent: 2 * n + 1,
            limit: MAX_DENSE_ENTRIES,
        });
    }
    Ok(())
}

/// One cycle for each torsion invariant factor of `H_n`.
///
/// A basis of the cycles comes from the column transform of the Smith form
/// of `∂_n`; the boundaries are rewritten in that basis and put in Smith
/// form again, and the inverse row transform of the second form picks out
/// the cycles whose multiples first become boundaries.
pub fn torsion_generators(x: &RackTable, n: usize) -> Result<Vec<TorsionGenerator>, HomologyError> {
    let m = x.size();
    check_dense(m, n)?;
    let dim = m.pow(n as u32);
    let b = boundary_matrix(x, n + 1)?;
    let (kernel, coords) = if n == 0 {
        (IntMatrix::identity(1), b)
    } else {
        let s = smith_with_inverses(&boundary_matrix(x, n)?);
        let r = s.rank();
        (s.v.columns(r, dim), s.v_inv.row_range(r, dim).mul(&b))
    };
    let s2 = smith_with_inverses(&coords);
    let basis = kernel.mul(&s2.u_inv);
    let mut out = Vec::new();
    for (i, d) in s2.d.diagonal().iter().enumerate() {
        if d.is_zero() || d.is_one() {
            continue;
        }
        out.push(TorsionGenerator {
            order: d.magnitude().clone(),
            cycle: ChainVector {
                degree: n,
                size: m,
                coeffs: basis.column(i),
            },
        });
    }
    Ok(out)
}

/// Whether `v` is a boundary, i.e. lies in the image of `∂_(n+1)`.
pub fn is_boundary(x: &RackTable, v: &ChainVector) -> Result<bool, HomologyError> {
    check_dense(x.size(), v.degree)?;
    let b = boundary_matrix(x, v.degree + 1)?;
    Ok(solve_integer(&b, &v.coeffs).is_some())
}

/// Whether `v` is a cycle, i.e. `∂_n v = 0`.
pub fn is_cycle(x: &RackTable, v: &ChainVector) -> Result<bool, HomologyError> {
    if v.degree <= 1 {
        return Ok(true);
    }
    let a = boundary_matrix(x, v.degree)?;
    Ok(a.mul_vec(&v.coeffs).iter().all(|c| c.is_zero()))
}

/// Checks that `g.cycle` is a cycle, is not a boundary, and becomes one
/// after multiplying by `g.order`.
pub fn verify_torsion_generator(
    x: &RackTable,
    g: &TorsionGenerator,
) -> Result<bool, HomologyError> {
    if !is_cycle(x, &g.cycle)? || is_boundary(x, &g.cycle)? {
        return Ok(false);
    }
    let k = BigInt::from(g.order.clone());
    let scaled = ChainVector {
        coeffs: g.cycle.coeffs.iter().map(|c| c * &k).collect(),
        ..g.cycle.clone()
    };
    is_boundary(x, &scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{conjugation_rack, dihedral_quandle};
    use crate::perm::{parse_cycles, PermGroup};

    fn tetrahedron() -> RackTable {
        conjugation_rack(
            &PermGroup::alternating(4),
            &[parse_cycles("(1,2,3)", 4).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn boundary_examples() {
        let d3 = dihedral_quandle(3).unwrap();
        let b2 = boundary_matrix(&d3, 2).unwrap();
        assert_eq!((b2.rows(), b2.cols()), (3, 9));
        // column (1,2): e_2 - e_3
        let col = b2.column(1);
        assert_eq!(
            col,
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(-1)]
        );
        for x in 0..3 {
            assert!(b2.column(x * 3 + x).iter().all(|c| c.is_zero()));
        }
        let b1 = boundary_matrix(&d3, 1).unwrap();
        assert_eq!((b1.rows(), b1.cols()), (1, 3));
        assert!(b1.is_zero());
        assert_eq!(
            boundary_matrix(&d3, 0),
            Err(HomologyError::DegreeTooSmall(0))
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        let t = tetrahedron();
        for n in 1..=3 {
            let p = boundary_matrix(&t, n)
                .unwrap()
                .mul(&boundary_matrix(&t, n + 1).unwrap());
            assert!(p.is_zero());
        }
    }

    #[test]
    fn known_groups() {
        let d5 = dihedral_quandle(5).unwrap();
        assert_eq!(rack_homology(&d5, 2).unwrap().to_string(), "[ 1, [ ] ]");
        let t = tetrahedron();
        assert_eq!(rack_homology(&t, 2).unwrap(), HomologyResult::new(1, &[2]));
        assert_eq!(
            rack_homology(&t, 3).unwrap().to_string(),
            "[ 1, [ 2, 2, 4 ] ]"
        );
        assert_eq!(rack_homology(&t, 0).unwrap(), HomologyResult::new(1, &[]));
        assert_eq!(rack_homology(&t, 1).unwrap(), HomologyResult::new(1, &[]));
    }

    #[test]
    fn memory_guard() {
        let d = dihedral_quandle(64).unwrap();
        assert!(matches!(
            rack_homology(&d, 4),
            Err(HomologyError::TooLarge { .. })
        ));
    }

    #[test]
    fn tetrahedron_generators() {
        let t = tetrahedron();
        let gens = torsion_generators(&t, 2).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].order, BigUint::from(2u32));
        assert!(verify_torsion_generator(&t, &gens[0]).unwrap());
        let gens3 = torsion_generators(&t, 3).unwrap();
        let orders: Vec<BigUint> = gens3.iter().map(|g| g.order.clone()).collect();
        assert_eq!(
            orders,
            vec![
                BigUint::from(2u32),
                BigUint::from(2u32),
                BigUint::from(4u32)
            ]
        );
        for g in &gens3 {
            assert!(verify_torsion_generator(&t, g).unwrap());
        }
        assert!(torsion_generators(&dihedral_quandle(5).unwrap(), 2)
            .unwrap()
            .is_empty());
        let one = RackTable::from_fn(1, |_, _| 0).unwrap();
        assert!(torsion_generators(&one, 2).unwrap().is_empty());
    }

    /// The character of all pairs `(i, j)`, `i != j`, inside three elements
    /// of the tetrahedron, read as a function on `X^2`: it is a cocycle mod 2
    /// and takes an odd value on the order-2 generator. Inner automorphisms
    /// move any three elements to any other three, so which ones are used
    /// does not matter.
    #[test]
    fn pair_character_detects_torsion() {
        let t = tetrahedron();
        let mut chi = ChainVector::zero(4, 2);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let k = chi.index_of(&[i, j]);
                    chi.coeffs[k] = BigInt::one();
                }
            }
        }
        assert!(!is_cycle(&t, &chi).unwrap());
        let two = BigInt::from(2);
        let coboundary = boundary_matrix(&t, 3)
            .unwrap()
            .transpose()
            .mul_vec(&chi.coeffs);
        assert!(coboundary.iter().all(|c| (c % &two).is_zero()));
        let g = &torsion_generators(&t, 2).unwrap()[0];
        let pairing: BigInt = chi
            .coeffs
            .iter()
            .zip(&g.cycle.coeffs)
            .map(|(a, b)| a * b)
            .sum();
        assert!(!(pairing % &two).is_zero());
    }
}
