//! Enveloping groups of racks.
//!
//! `G_X` is generated by the points of `X` subject to `i j i^-1 = i ▷ j`.
//! Its finite quotient adds `x^k` for `k` the order of `φ_x`.

mod coset;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::homology::{smith_normal_form, IntMatrix};
use crate::rack::RackTable;

pub use coset::{todd_coxeter, CosetTable};

/// Generator `g` (0-based) is written `g + 1`, its inverse `-(g + 1)`.
pub type Letter = i32;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnvGroupError {
    #[error("coset enumeration exceeded {limit} cosets")]
    TooManyCosets { limit: usize },
    #[error("relator {relator} uses letter {letter}, valid generators are 1..={generators}")]
    BadLetter {
        relator: usize,
        letter: Letter,
        generators: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// Relators are freely reduced; empty ones are kept.
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<Self, EnvGroupError> {
        for (k, w) in relators.iter().enumerate() {
            if let Some(&letter) = w
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > generators)
            {
                return Err(EnvGroupError::BadLetter {
                    relator: k + 1,
                    letter,
                    generators,
                });
            }
        }
        Ok(GroupPresentation {
            generators,
            relators: relators.into_iter().map(|w| free_reduce(&w)).collect(),
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// Exponent sum of each generator in each relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.generators];
                for &l in w {
                    row[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
                }
                row
            })
            .collect()
    }
}

/// Printed as `<x1, x2 | x1*x2*x1^-1, ...>`.
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|g| format!("x{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "1".to_string();
                }
                let letters: Vec<String> = w
                    .iter()
                    .map(|&l| {
                        if l > 0 {
                            format!("x{l}")
                        } else {
                            format!("x{}^-1", -l)
                        }
                    })
                    .collect();
                letters.join("*")
            })
            .collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn letter(g: usize) -> Letter {
    g as Letter + 1
}

/// Relators `i j i^-1 (i ▷ j)^-1` for all `i, j`, in row-major order, then
/// `x^ord(φ_x)` for every `x` when `finite` is set.
pub fn enveloping_presentation(x: &RackTable, finite: bool) -> GroupPresentation {
    let n = x.size();
    let mut relators = Vec::with_capacity(n * n + n);
    for i in 0..n {
        for j in 0..n {
            relators.push(vec![letter(i), letter(j), -letter(i), -letter(x.get(i, j))]);
        }
    }
    if finite {
        for i in 0..n {
            let k = x.translation(i).order() as usize;
            relators.push(vec![letter(i); k]);
        }
    }
    GroupPresentation::new(n, relators).expect("letters in range")
}

/// `|Ḡ_X|`, by coset enumeration with the default bound.
pub fn finite_enveloping_order(x: &RackTable) -> Result<usize, EnvGroupError> {
    Ok(todd_coxeter(&enveloping_presentation(x, true), DEFAULT_MAX_COSETS)?.len())
}

/// Abelianization `Z^betti × Z_(d_1) × ...`, `d_1 | d_2 | ...`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub betti: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.betti == 0).then(|| self.torsion.iter().fold(BigUint::one(), |a, d| a * d))
    }
}

/// Printed as `Z^2 x Z_2 x Z_6`; the trivial group is `0`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// Smith form of the exponent-sum matrix of `p`.
pub fn abelian_invariants(p: &GroupPresentation) -> AbelianInvariants {
    let m = p.generators();
    let rows = p.exponent_matrix();
    if rows.is_empty() || m == 0 {
        return AbelianInvariants {
            betti: m,
            torsion: Vec::new(),
        };
    }
    let (d, _, _) = smith_normal_form(&IntMatrix::from_rows(&rows));
    let diag: Vec<_> = d.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
    AbelianInvariants {
        betti: m - diag.len(),
        torsion: diag
            .iter()
            .map(|x| x.magnitude().clone())
            .filter(|x| !x.is_one())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::brute_force_indecomposable;
    use crate::construct::{affine_quandle_zn, conjugation_rack, dihedral_quandle};
    use crate::perm::{parse_cycles, PermGroup};

    fn conj(degree: usize, rep: &str) -> RackTable {
        let g = PermGroup::symmetric(degree);
        conjugation_rack(&g, &[parse_cycles(rep, degree).unwrap()]).unwrap()
    }

    fn tetrahedron() -> RackTable {
        let g = PermGroup::alternating(4);
        conjugation_rack(&g, &[parse_cycles("(1,2,3)", 4).unwrap()]).unwrap()
    }

    fn regular_group(t: &CosetTable) -> PermGroup {
        let gens = (0..t.generator_count())
            .map(|g| t.generator_permutation(g))
            .collect();
        PermGroup::new(t.len(), gens)
    }

    fn ab(b: usize, t: &[u64]) -> AbelianInvariants {
        AbelianInvariants {
            betti: b,
            torsion: t.iter().map(|&d| BigUint::from(d)).collect(),
        }
    }

    #[test]
    fn presentations() {
        let one = RackTable::from_data(1, vec![0]).unwrap();
        let p = enveloping_presentation(&one, true);
        assert_eq!(p.generators(), 1);
        assert_eq!(p.relators().last().unwrap(), &vec![1]);
        assert_eq!(todd_coxeter(&p, 10).unwrap().len(), 1);

        let p = enveloping_presentation(&dihedral_quandle(3).unwrap(), true);
        assert_eq!(p.generators(), 3);
        assert_eq!(p.relators().len(), 12);
        assert!(p.relators()[9..]
            .iter()
            .all(|w| w.len() == 2 && w[0] == w[1]));
        // i i i^-1 i^-1 reduces to the empty word
        assert!(p.relators()[0].is_empty());

        let p = enveloping_presentation(&tetrahedron(), true);
        assert_eq!(p.relators().len(), 20);
        assert!(p.relators()[16..].iter().all(|w| w.len() == 3));
        assert_eq!(
            enveloping_presentation(&tetrahedron(), false)
                .relators()
                .len(),
            16
        );
    }

    #[test]
    fn bad_letters() {
        assert!(matches!(
            GroupPresentation::new(2, vec![vec![1, 3]]),
            Err(EnvGroupError::BadLetter {
                relator: 1,
                letter: 3,
                ..
            })
        ));
        assert!(GroupPresentation::new(2, vec![vec![0]]).is_err());
        assert_eq!(
            GroupPresentation::new(2, vec![vec![1, 2, -2, -1, 1]])
                .unwrap()
                .relators()[0],
            vec![1]
        );
    }

    #[test]
    fn small_enumerations() {
        let c2 = GroupPresentation::new(1, vec![vec![1, 1]]).unwrap();
        assert_eq!(todd_coxeter(&c2, 100).unwrap().len(), 2);
        // <a, b | a^2, b^3, (ab)^5>, the alternating group A5
        let a5 =
            GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2, 2], [1, 2].repeat(5)]).unwrap();
        let t = todd_coxeter(&a5, 10_000).unwrap();
        assert_eq!(t.len(), 60);
        assert!(t.satisfies(&a5));
        assert_eq!(regular_group(&t).order(), BigUint::from(60u32));
        // <a, b | a^3, b^3, (ab)^3> is infinite
        let inf = GroupPresentation::new(2, vec![vec![1, 1, 1], vec![2, 2, 2], [1, 2].repeat(3)])
            .unwrap();
        assert_eq!(
            todd_coxeter(&inf, 500),
            Err(EnvGroupError::TooManyCosets { limit: 500 })
        );
    }

    #[test]
    fn table_one_orders() {
        let racks = [
            dihedral_quandle(3).unwrap(),
            tetrahedron(),
            affine_quandle_zn(5, 2).unwrap(),
            conj(4, "(1,2)"),
            affine_quandle_zn(7, 3).unwrap(),
            conj(4, "(1,2,3,4)"),
            conj(5, "(1,2)"),
        ];
        let inner: Vec<u64> = racks
            .iter()
            .map(|x| x.inner_group().order_u64().unwrap())
            .collect();
        assert_eq!(inner, [6, 12, 20, 24, 42, 24, 120]);
        let env: Vec<usize> = racks
            .iter()
            .map(|x| finite_enveloping_order(x).unwrap())
            .collect();
        assert_eq!(env, [6, 24, 20, 24, 42, 96, 120]);
        for (i, e) in inner.iter().zip(&env) {
            assert_eq!(*e as u64 % i, 0);
        }
    }

    #[test]
    fn abelian_invariant_examples() {
        let c2 = GroupPresentation::new(1, vec![vec![1, 1]]).unwrap();
        assert_eq!(abelian_invariants(&c2), ab(0, &[2]));
        let free = GroupPresentation::new(2, vec![]).unwrap();
        assert_eq!(abelian_invariants(&free), ab(2, &[]));
        assert_eq!(abelian_invariants(&free).to_string(), "Z^2");
        let d3 = enveloping_presentation(&dihedral_quandle(3).unwrap(), true);
        assert_eq!(abelian_invariants(&d3), ab(0, &[2]));
        assert_eq!(abelian_invariants(&d3).to_string(), "Z_2");
        let d3_inf = enveloping_presentation(&dihedral_quandle(3).unwrap(), false);
        assert_eq!(abelian_invariants(&d3_inf).to_string(), "Z");
        let trivial = GroupPresentation::new(1, vec![vec![1]]).unwrap();
        assert_eq!(abelian_invariants(&trivial).to_string(), "0");
    }

    #[test]
    fn abelianization_matches_derived_subgroup() {
        let mut racks = vec![tetrahedron(), conj(4, "(1,2,3,4)"), conj(5, "(1,2)")];
        for n in 3..=6 {
            racks.extend(brute_force_indecomposable(n).unwrap());
        }
        for x in &racks {
            let p = enveloping_presentation(x, true);
            let t = todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap();
            if t.len() > 120 {
                continue;
            }
            let g = regular_group(&t);
            let quotient = g.order() / g.derived_subgroup().order();
            assert_eq!(abelian_invariants(&p).order(), Some(quotient), "{x:?}");
        }
    }

    #[test]
    fn regular_representation_satisfies_relators() {
        for n in 1..=8 {
            for x in brute_force_indecomposable(n).unwrap() {
                let p = enveloping_presentation(&x, true);
                let t = todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap();
                assert!(t.satisfies(&p));
                let g = regular_group(&t);
                assert_eq!(g.order(), BigUint::from(t.len()));
                assert_eq!(t.len() as u64 % x.inner_group().order_u64().unwrap(), 0);
            }
        }
    }
}
