//! Constructors for the standard quandle families.

mod field;

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::perm::{GroupError, PermGroup, Permutation};
use crate::rack::RackTable;

pub use field::{FiniteField, MAX_FIELD_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("dihedral quandle needs n >= 2, got {0}")]
    DihedralTooSmall(usize),
    #[error("size must be at least 1")]
    EmptyRack,
    #[error("{t} is not a unit modulo {n}")]
    NotUnit { t: usize, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {p}^{k} is not supported (bound {max})", max = MAX_FIELD_ORDER)]
    FieldTooLarge { p: u32, k: u32 },
    #[error("alpha must be a nonzero field element")]
    ZeroAlpha,
    #[error("field element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("{0} does not centralize the subgroup")]
    NotCentralizing(Permutation),
    #[error("{0} is not an element of the group")]
    NotInGroup(Permutation),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `i ▷ j = 2i - j (mod n)` on the residues `0..n`.
pub fn dihedral_quandle(n: usize) -> Result<RackTable, ConstructError> {
    if n < 2 {
        return Err(ConstructError::DihedralTooSmall(n));
    }
    Ok(RackTable::from_fn(n, |i, j| (2 * i + n - j) % n).expect("dihedral tables are racks"))
}

/// `a ▷ b = (1 - t)a + tb (mod n)`.
pub fn affine_quandle_zn(n: usize, t: usize) -> Result<RackTable, ConstructError> {
    if n == 0 {
        return Err(ConstructError::EmptyRack);
    }
    let t = t % n;
    if n > 1 && t.gcd(&n) != 1 {
        return Err(ConstructError::NotUnit { t, n });
    }
    let s = (1 + n - t) % n;
    Ok(RackTable::from_fn(n, |a, b| (s * a + t * b) % n).expect("affine tables are racks"))
}

pub fn make_field(p: u32, k: u32) -> Result<FiniteField, ConstructError> {
    FiniteField::new(p, k)
}

/// `a ▷ b = (1 - α)a + αb` over `F`.
pub fn affine_quandle_fq(f: &FiniteField, alpha: usize) -> Result<RackTable, ConstructError> {
    let q = f.order();
    if alpha >= q {
        return Err(ConstructError::ElementOutOfRange(alpha));
    }
    if alpha == 0 {
        return Err(ConstructError::ZeroAlpha);
    }
    let s = f.sub(1, alpha);
    let mul_s: Vec<usize> = (0..q).map(|a| f.mul(s, a)).collect();
    let mul_a: Vec<usize> = (0..q).map(|b| f.mul(alpha, b)).collect();
    Ok(RackTable::from_fn(q, |a, b| f.add(mul_s[a], mul_a[b])).expect("affine tables are racks"))
}

/// Conjugation quandle `x ▷ y = x y x⁻¹` on the union of the conjugacy
/// classes of `elements`, labeled by ascending image sequence.
pub fn conjugation_rack(
    g: &PermGroup,
    elements: &[Permutation],
) -> Result<RackTable, ConstructError> {
    let mut set = BTreeSet::new();
    for e in elements {
        set.extend(g.conjugacy_class(e)?);
    }
    let elems: Vec<Permutation> = set.into_iter().collect();
    if elems.is_empty() {
        return Err(ConstructError::EmptyRack);
    }
    let n = elems.len();
    let mut data = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            let c = x.conjugate(y);
            let k = elems
                .binary_search(&c)
                .expect("classes are closed under conjugation");
            data.push(k as u32);
        }
    }
    Ok(RackTable::from_data(n, data).expect("conjugation racks are racks"))
}

/// The quandle `(G, H, I_z)` on the left cosets of `H`, in the order of
/// `coset_representatives`, with `xH ▷ yH = x z x⁻¹ y z⁻¹ H`.
pub fn homogeneous_quandle(
    g: &PermGroup,
    h: &PermGroup,
    z: &Permutation,
) -> Result<RackTable, ConstructError> {
    if z.degree() != g.degree() || !g.contains(z) {
        return Err(ConstructError::NotInGroup(z.clone()));
    }
    let reps = g.coset_representatives(h)?;
    if h.generators().iter().any(|s| !s.commutes_with(z)) {
        return Err(ConstructError::NotCentralizing(z.clone()));
    }
    let n = reps.len();
    let z_inv = z.inverse();
    let lefts: Vec<Permutation> = reps.iter().map(|x| x.conjugate(z)).collect();
    let rights: Vec<Permutation> = reps.iter().map(|y| y.compose(&z_inv)).collect();
    let mut data = Vec::with_capacity(n * n);
    if let Some(p) = g.stabilized_point(h) {
        // cosets of a point stabilizer correspond to images of the point
        let mut index = vec![u32::MAX; g.degree()];
        for (i, r) in reps.iter().enumerate() {
            index[r.apply(p)] = i as u32;
        }
        for l in &lefts {
            for r in &rights {
                data.push(index[l.apply(r.apply(p))]);
            }
        }
    } else {
        let map = g.coset_index_map(h, &reps);
        for l in &lefts {
            for r in &rights {
                data.push(map[&l.compose(r)] as u32);
            }
        }
    }
    Ok(RackTable::from_data(n, data).expect("homogeneous quandles are racks"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use crate::rack::{canonical_form, find_isomorphism};

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn dihedral_tables() {
        let d4 = dihedral_quandle(4).unwrap();
        assert_eq!(
            d4.rows_one_based(),
            vec![
                vec![1, 4, 3, 2],
                vec![3, 2, 1, 4],
                vec![1, 4, 3, 2],
                vec![3, 2, 1, 4]
            ]
        );
        let d3 = dihedral_quandle(3).unwrap();
        assert_eq!(
            d3.rows_one_based(),
            vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]
        );
        let d2 = dihedral_quandle(2).unwrap();
        assert_eq!(d2, RackTable::from_fn(2, |_, j| j).unwrap());
        assert_eq!(
            dihedral_quandle(1),
            Err(ConstructError::DihedralTooSmall(1))
        );
    }

    #[test]
    fn affine_zn() {
        assert!(affine_quandle_zn(5, 2).unwrap().is_indecomposable());
        assert_eq!(
            affine_quandle_zn(6, 1).unwrap(),
            RackTable::from_fn(6, |_, j| j).unwrap()
        );
        assert_eq!(
            affine_quandle_zn(6, 2),
            Err(ConstructError::NotUnit { t: 2, n: 6 })
        );
        let a = affine_quandle_zn(4, 3).unwrap();
        let d = dihedral_quandle(4).unwrap();
        assert_eq!(a, d);
        assert!(find_isomorphism(&a, &d).is_some());
    }

    #[test]
    fn affine_indecomposable_iff_gcd() {
        for n in 1..=12usize {
            for t in (0..n).filter(|&t| n == 1 || t.gcd(&n) == 1) {
                let x = affine_quandle_zn(n, t).unwrap();
                assert!(x.is_quandle());
                let expected = (1 + n - t % n).gcd(&n) == 1 || n == 1;
                assert_eq!(x.is_indecomposable(), expected, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn affine_fq() {
        let f4 = make_field(2, 2).unwrap();
        let omega = f4.primitive_element();
        let x = affine_quandle_fq(&f4, omega).unwrap();
        assert!(x.is_indecomposable());
        let t = conjugation_rack(&PermGroup::alternating(4), &[p("(1,2,3)", 4)]).unwrap();
        assert!(find_isomorphism(&x, &t).is_some());
        assert_eq!(
            affine_quandle_fq(&f4, 1).unwrap(),
            RackTable::from_fn(4, |_, j| j).unwrap()
        );
        assert_eq!(affine_quandle_fq(&f4, 0), Err(ConstructError::ZeroAlpha));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(
            canonical_form(&affine_quandle_fq(&f5, 2).unwrap()),
            canonical_form(&affine_quandle_zn(5, 2).unwrap())
        );
        let f9 = make_field(3, 2).unwrap();
        for a in 2..9 {
            assert!(affine_quandle_fq(&f9, a).unwrap().is_indecomposable());
        }
    }

    #[test]
    fn conjugation_racks() {
        let s3 = PermGroup::symmetric(3);
        let x = conjugation_rack(&s3, &[p("(1,2)", 3)]).unwrap();
        assert_eq!(x.size(), 3);
        assert_eq!(
            canonical_form(&x),
            canonical_form(&dihedral_quandle(3).unwrap())
        );
        let t = conjugation_rack(&PermGroup::alternating(4), &[p("(1,2,3)", 4)]).unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.is_indecomposable());
        let s5 = conjugation_rack(&PermGroup::symmetric(5), &[p("(1,2)", 5)]).unwrap();
        assert_eq!(s5.size(), 10);
        assert!(s5.is_indecomposable());
        let again = conjugation_rack(&PermGroup::symmetric(5), &[p("(1,2)", 5)]).unwrap();
        assert_eq!(s5, again);
        let a4 = PermGroup::alternating(4);
        assert!(conjugation_rack(&a4, &[p("(1,2)", 4)]).is_err());
    }

    #[test]
    fn homogeneous() {
        let s3 = PermGroup::symmetric(3);
        let h = PermGroup::new(3, vec![p("(2,3)", 3)]);
        let x = homogeneous_quandle(&s3, &h, &p("(2,3)", 3)).unwrap();
        assert_eq!(
            canonical_form(&x),
            canonical_form(&dihedral_quandle(3).unwrap())
        );
        let triv = homogeneous_quandle(&s3, &h, &Permutation::identity(3)).unwrap();
        assert_eq!(triv, RackTable::from_fn(3, |_, j| j).unwrap());
        assert!(matches!(
            homogeneous_quandle(&s3, &h, &p("(1,2)", 3)),
            Err(ConstructError::NotCentralizing(_))
        ));
    }

    #[test]
    fn homogeneous_general_subgroup_path() {
        // H = <(1,2)(3,4)> is not a point stabilizer in S4
        let s4 = PermGroup::symmetric(4);
        let z = p("(1,2)(3,4)", 4);
        let h = PermGroup::new(4, vec![z.clone()]);
        let x = homogeneous_quandle(&s4, &h, &z).unwrap();
        assert_eq!(x.size(), 12);
        assert!(x.is_quandle());
    }

    #[test]
    fn reconstruction_from_inner_group() {
        let cases = [
            dihedral_quandle(5).unwrap(),
            affine_quandle_zn(7, 3).unwrap(),
            conjugation_rack(&PermGroup::alternating(4), &[p("(1,2,3)", 4)]).unwrap(),
            conjugation_rack(&PermGroup::symmetric(4), &[p("(1,2)", 4)]).unwrap(),
        ];
        for x in cases {
            let g = x.inner_group();
            let h = g.stabilizer(0);
            let z = x.translation(0);
            assert!(h.generators().iter().all(|s| s.commutes_with(&z)));
            let y = homogeneous_quandle(&g, &h, &z).unwrap();
            assert!(find_isomorphism(&x, &y).is_some());
        }
    }
}
