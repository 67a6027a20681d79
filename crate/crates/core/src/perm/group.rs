use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::bsgs::{Bsgs, ElementIter};
use super::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("permutation {0} is not an element of the group")]
    NotMember(Permutation),
    #[error("not a subgroup: generator {0} lies outside the group")]
    NotSubgroup(Permutation),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. Once built the chain is frozen, so shared references are safe to
/// use from several threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<Bsgs>,
}

impl PartialEq for PermGroup {
    /// Equality as subgroups of the symmetric group.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// # Panics
    /// If a generator has the wrong degree.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        PermGroup {
            degree,
            generators,
            bsgs: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::cycle(degree, &[0, 1]).unwrap());
            let all: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::cycle(degree, &all).unwrap());
        }
        Self::new(degree, gens)
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|k| Permutation::cycle(degree, &[0, 1, k]).unwrap())
            .collect();
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::new(self.degree, &self.generators, &[]))
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().base().to_vec()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain()
            .strong_generators()
            .map(|(_, g)| g.clone())
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.chain().order_u128().and_then(|o| o.to_u64())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Every element, identity first. Intended for small groups.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        ElementIter::new(self.chain())
    }

    /// Orbit of `point`, ascending.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = vec![point];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        queue.sort_unstable();
        queue
    }

    /// All orbits, each ascending, ordered by their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Point stabilizer, generated by the strong generators of a chain whose
    /// base starts at `point`.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let chain = Bsgs::new(self.degree, &self.generators, &[point]);
        let gens = chain.stabilizer_generators(1);
        PermGroup::new(self.degree, gens)
    }

    /// Subgroup fixing each of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = Bsgs::new(self.degree, &self.generators, points);
        let gens = chain.stabilizer_generators(points.len());
        PermGroup::new(self.degree, gens)
    }

    /// Elements of the group commuting with every permutation in `with`,
    /// found by backtracking over the stabilizer chain. Fixing the images of
    /// the base points determines an element, and the commuting condition
    /// `c(s(x)) = s(c(x))` propagates each fixed image along the orbits of
    /// `with`, which prunes most branches immediately.
    pub fn centralizer_elements(&self, with: &[Permutation]) -> Vec<Permutation> {
        let chain = self.chain();
        let levels = chain.levels();
        let n = self.degree;
        let mut out = Vec::new();
        if levels.is_empty() {
            return vec![Permutation::identity(n)];
        }
        let mut stack: Vec<(usize, Permutation)> = vec![(0, Permutation::identity(n))];
        while let Some((depth, prefix)) = stack.pop() {
            let level = &levels[depth];
            for &b in level.orbit.iter().rev() {
                let u = level.transversal[b].as_ref().unwrap();
                let p = prefix.compose(u);
                if !commuting_images_consistent(&p, &chain.base()[..=depth], with, n) {
                    continue;
                }
                if depth + 1 == levels.len() {
                    if with.iter().all(|s| s.commutes_with(&p)) {
                        out.push(p);
                    }
                } else {
                    stack.push((depth + 1, p));
                }
            }
        }
        out.sort();
        out
    }

    /// The center as an explicit, sorted list of elements.
    pub fn center(&self) -> Vec<Permutation> {
        let gens: Vec<Permutation> = self.generators.clone();
        self.centralizer_elements(&gens)
    }

    /// Orbit of `g` under conjugation, sorted.
    pub fn conjugacy_class(&self, g: &Permutation) -> Result<Vec<Permutation>, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        if !self.contains(g) {
            return Err(GroupError::NotMember(g.clone()));
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(g.clone());
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(x) = queue.pop_front() {
            for s in &self.generators {
                let y = s.conjugate(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut v: Vec<Permutation> = seen.into_iter().collect();
        v.sort();
        Ok(v)
    }

    /// Whether `c * h1 * c^-1 == h2` for some element `c` of this group.
    ///
    /// Cheap invariants (orders, orbit-length profiles) reject most pairs; the
    /// remaining cases scan the group's elements, so this is meant for groups
    /// of desk-scale order.
    pub fn are_conjugate_subgroups(&self, h1: &PermGroup, h2: &PermGroup) -> bool {
        if h1.degree != self.degree || h2.degree != self.degree {
            return false;
        }
        if h1.order() != h2.order() {
            return false;
        }
        let profile = |h: &PermGroup| {
            let mut v: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
            v.sort_unstable();
            v
        };
        if profile(h1) != profile(h2) {
            return false;
        }
        let gens: Vec<&Permutation> = h1.generators.iter().filter(|g| !g.is_identity()).collect();
        if gens.iter().all(|g| h2.contains(g)) {
            return true;
        }
        self.elements()
            .any(|c| gens.iter().all(|g| h2.contains(&c.conjugate(g))))
    }

    /// One representative per left coset `rH`, the identity first, then in
    /// the order the cosets are met while enumerating the group.
    ///
    /// When `h` is the stabilizer of a point `p`, cosets correspond to the
    /// points of the orbit of `p` and are listed by ascending image of `p`
    /// (after the identity) without enumerating the group.
    pub fn coset_representatives(&self, h: &PermGroup) -> Result<Vec<Permutation>, GroupError> {
        self.check_subgroup(h)?;
        if let Some(p) = self.stabilized_point(h) {
            return Ok(self.orbit_transversal(p));
        }
        let h_elems: Vec<Permutation> = h.elements().collect();
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut reps = Vec::new();
        for g in self.elements() {
            if covered.contains(&g) {
                continue;
            }
            for x in &h_elems {
                covered.insert(g.compose(x));
            }
            reps.push(g);
        }
        Ok(reps)
    }

    pub(crate) fn check_subgroup(&self, h: &PermGroup) -> Result<(), GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        for g in &h.generators {
            if !self.contains(g) {
                return Err(GroupError::NotSubgroup(g.clone()));
            }
        }
        Ok(())
    }

    /// A point `p` such that `h` is exactly the stabilizer of `p` here.
    pub(crate) fn stabilized_point(&self, h: &PermGroup) -> Option<usize> {
        let n = self.degree;
        let candidates = (0..n).filter(|&p| h.generators.iter().all(|g| g.apply(p) == p));
        for p in candidates {
            let orbit = self.orbit(p).len();
            if h.order() * BigUint::from(orbit) == self.order() {
                return Some(p);
            }
        }
        None
    }

    /// For each point `q` of the orbit of `p`, an element mapping `p` to `q`;
    /// the identity (for `q = p`) first, then ascending `q`.
    pub(crate) fn orbit_transversal(&self, p: usize) -> Vec<Permutation> {
        let n = self.degree;
        let mut trans: Vec<Option<Permutation>> = vec![None; n];
        trans[p] = Some(Permutation::identity(n));
        let mut queue = vec![p];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for g in &self.generators {
                let y = g.apply(x);
                if trans[y].is_none() {
                    trans[y] = Some(g.compose(trans[x].as_ref().unwrap()));
                    queue.push(y);
                }
            }
            k += 1;
        }
        let mut out = vec![trans[p].take().unwrap()];
        out.extend(trans.into_iter().flatten());
        out
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if x.is_identity() || current.contains(&x) {
                continue;
            }
            gens.push(x.clone());
            current = PermGroup::new(self.degree, gens.clone());
            for s in &self.generators {
                queue.push_back(s.conjugate(&x));
            }
        }
        current
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
                comms.push(c);
            }
        }
        self.normal_closure(&comms)
    }

    /// Map from element to its left-coset index for the given coset
    /// representatives of `h`. Enumerates the whole group.
    pub(crate) fn coset_index_map(
        &self,
        h: &PermGroup,
        reps: &[Permutation],
    ) -> HashMap<Permutation, usize> {
        let h_elems: Vec<Permutation> = h.elements().collect();
        let mut map = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            for x in &h_elems {
                map.insert(r.compose(x), i);
            }
        }
        map
    }
}

/// Propagates the partial map `base[j] -> p(base[j])` along `with` and
/// reports whether it stays a well-defined injection.
fn commuting_images_consistent(
    p: &Permutation,
    base: &[usize],
    with: &[Permutation],
    n: usize,
) -> bool {
    let mut fwd: Vec<u32> = vec![u32::MAX; n];
    let mut bwd: Vec<u32> = vec![u32::MAX; n];
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let assign = |x: usize,
                  y: usize,
                  fwd: &mut Vec<u32>,
                  bwd: &mut Vec<u32>,
                  q: &mut Vec<(usize, usize)>|
     -> bool {
        if fwd[x] != u32::MAX {
            return fwd[x] as usize == y;
        }
        if bwd[y] != u32::MAX {
            return false;
        }
        fwd[x] = y as u32;
        bwd[y] = x as u32;
        q.push((x, y));
        true
    };
    for &b in base {
        if !assign(b, p.apply(b), &mut fwd, &mut bwd, &mut queue) {
            return false;
        }
    }
    while let Some((x, y)) = queue.pop() {
        for s in with {
            if !assign(s.apply(x), s.apply(y), &mut fwd, &mut bwd, &mut queue) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter().map(|s| parse_cycles(s, n).unwrap()).collect(),
        )
    }

    fn closure_order(g: &PermGroup) -> usize {
        // brute-force closure, independent of the stabilizer chain
        let n = g.degree();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(n);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = s.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(3, &["(1,2)", "(1,2,3)"]).order(), BigUint::from(6u32));
        assert_eq!(grp(3, &["(1,2,3)"]).order(), BigUint::from(3u32));
        let a4 = grp(4, &["(1,2,3)", "(1,2,4)"]);
        assert_eq!(closure_order(&a4), 12);
        assert_eq!(a4.order(), BigUint::from(12u32));
    }

    #[test]
    fn orders_match_closure_on_assorted_groups() {
        let cases: Vec<PermGroup> = vec![
            grp(6, &["(1,2,3,4,5,6)", "(1,2)"]),
            grp(6, &["(1,2)(3,4)", "(1,3,5)(2,4,6)"]),
            grp(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
            grp(8, &["(1,2,3,4,5,6,7,8)", "(1,8)(2,7)(3,6)(4,5)"]),
            grp(8, &["(1,2)", "(3,4)", "(5,6)", "(7,8)", "(1,3)(2,4)"]),
            PermGroup::alternating(6),
            PermGroup::symmetric(7),
        ];
        for g in &cases {
            assert_eq!(
                g.order().to_usize().unwrap(),
                closure_order(g),
                "{:?}",
                g.generators()
            );
        }
    }

    #[test]
    fn big_symmetric_order() {
        let s = PermGroup::symmetric(30);
        let expect: BigUint = (1..=30u32).map(BigUint::from).product();
        assert_eq!(s.order(), expect);
        assert_eq!(PermGroup::alternating(12).order_u64(), Some(239_500_800));
    }

    #[test]
    fn orbits_and_transitivity() {
        let d4 = grp(4, &["(2,4)", "(1,3)"]);
        assert_eq!(d4.orbit(0), vec![0, 2]);
        assert!(!d4.is_transitive());
        assert_eq!(PermGroup::trivial(4).orbit(1), vec![1]);
        assert_eq!(grp(3, &["(1,2,3)"]).orbit(0), vec![0, 1, 2]);
        assert!(PermGroup::symmetric(3).is_transitive());
        assert!(!grp(3, &["(1,2)"]).is_transitive());
    }

    #[test]
    fn stabilizers() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.stabilizer(0).order(), BigUint::from(2u32));
        let a4 = PermGroup::alternating(4);
        assert_eq!(a4.stabilizer(3).order(), BigUint::from(3u32));
        assert!(PermGroup::trivial(5).stabilizer(2).order() == BigUint::from(1u32));
        for g in a4.stabilizer(3).generators() {
            assert_eq!(g.apply(3), 3);
        }
    }

    #[test]
    fn centers() {
        assert_eq!(
            PermGroup::symmetric(3).center(),
            vec![Permutation::identity(3)]
        );
        assert_eq!(grp(3, &["(1,2,3)"]).center().len(), 3);
        assert_eq!(grp(4, &["(1,2)", "(3,4)"]).center().len(), 4);
        // D4 acting on a square has a center of order 2
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let z = d8.center();
        assert_eq!(z.len(), 2);
        assert_eq!(z[1].to_string(), "(1,3)(2,4)");
    }

    #[test]
    fn center_matches_element_scan() {
        let cases = vec![
            grp(6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]),
            grp(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,8)(3,7)(4,6)"]),
            grp(8, &["(1,2)", "(3,4)", "(5,6)(7,8)"]),
            grp(6, &["(1,2)(3,4)", "(1,3)(2,4)", "(5,6)"]),
        ];
        for g in &cases {
            let elems: Vec<Permutation> = g.elements().collect();
            let mut scan: Vec<Permutation> = elems
                .iter()
                .filter(|x| elems.iter().all(|y| x.commutes_with(y)))
                .cloned()
                .collect();
            scan.sort();
            assert_eq!(g.center(), scan);
        }
    }

    #[test]
    fn conjugacy_classes() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(
            s3.conjugacy_class(&parse_cycles("(1,2)", 3).unwrap())
                .unwrap()
                .len(),
            3
        );
        let a4 = PermGroup::alternating(4);
        assert_eq!(
            a4.conjugacy_class(&parse_cycles("(1,2,3)", 4).unwrap())
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            a4.conjugacy_class(&Permutation::identity(4)).unwrap().len(),
            1
        );
        assert!(matches!(
            a4.conjugacy_class(&parse_cycles("(1,2)", 4).unwrap()),
            Err(GroupError::NotMember(_))
        ));
    }

    #[test]
    fn subgroup_conjugacy() {
        let s3 = PermGroup::symmetric(3);
        let h1 = grp(3, &["(1,2)"]);
        let h2 = grp(3, &["(1,3)"]);
        let h3 = grp(3, &["(1,2,3)"]);
        assert!(s3.are_conjugate_subgroups(&h1, &h2));
        assert!(!s3.are_conjugate_subgroups(&h1, &h3));
        assert!(s3.are_conjugate_subgroups(&h1, &h1));
        // conjugate in S4 but not in the Klein-four group itself
        let s4 = PermGroup::symmetric(4);
        let v = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let a = grp(4, &["(1,2)(3,4)"]);
        let b = grp(4, &["(1,3)(2,4)"]);
        assert!(s4.are_conjugate_subgroups(&a, &b));
        assert!(!v.are_conjugate_subgroups(&a, &b));
    }

    #[test]
    fn coset_representatives_partition() {
        let s3 = PermGroup::symmetric(3);
        let h = grp(3, &["(2,3)"]);
        let reps = s3.coset_representatives(&h).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps[0].is_identity());
        assert_eq!(
            s3.coset_representatives(&s3).unwrap(),
            vec![Permutation::identity(3)]
        );
        let a4 = PermGroup::alternating(4);
        let st = a4.stabilizer(3);
        assert_eq!(a4.coset_representatives(&st).unwrap().len(), 4);

        // a non-stabilizer subgroup goes through the enumeration path
        let s4 = PermGroup::symmetric(4);
        let v = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let reps = s4.coset_representatives(&v).unwrap();
        assert_eq!(reps.len(), 6);
        assert!(reps[0].is_identity());
        let v_elems: Vec<Permutation> = v.elements().collect();
        let mut all: HashSet<Permutation> = HashSet::new();
        for r in &reps {
            for x in &v_elems {
                assert!(all.insert(r.compose(x)), "cosets overlap");
            }
        }
        assert_eq!(all.len(), 24);
        assert!(matches!(
            PermGroup::alternating(4).coset_representatives(&grp(4, &["(1,2)"])),
            Err(GroupError::NotSubgroup(_))
        ));
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(
            PermGroup::symmetric(4).derived_subgroup().order(),
            BigUint::from(12u32)
        );
        assert_eq!(
            PermGroup::alternating(4).derived_subgroup().order(),
            BigUint::from(4u32)
        );
        assert_eq!(
            PermGroup::symmetric(5).derived_subgroup().order(),
            BigUint::from(60u32)
        );
    }
}
