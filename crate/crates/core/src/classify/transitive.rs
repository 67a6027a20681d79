//! Transitive subgroups of `S_n`, `n <= 8`, up to conjugacy.
//!
//! Subgroup classes are found by growing groups one element at a time.
//! Every element of `S_n` is a rank in `0..n!` (Lehmer code, which orders
//! permutations lexicographically by image sequence) and a subgroup is a
//! bitset over ranks.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use crate::perm::{PermGroup, Permutation};

pub const MAX_BUILTIN_DEGREE: usize = 8;

struct Sym {
    n: usize,
    perms: Vec<[u8; 8]>,
    fact: [u32; 9],
}

impl Sym {
    fn new(n: usize) -> Self {
        let mut fact = [1u32; 9];
        for i in 1..9 {
            fact[i] = fact[i - 1] * i as u32;
        }
        let mut perms = Vec::with_capacity(fact[n] as usize);
        for r in 0..fact[n] {
            let mut avail: Vec<u8> = (0..n as u8).collect();
            let mut p = [0u8; 8];
            let mut rem = r;
            for (i, slot) in p.iter_mut().enumerate().take(n) {
                let f = fact[n - 1 - i];
                *slot = avail.remove((rem / f) as usize);
                rem %= f;
            }
            perms.push(p);
        }
        Sym { n, perms, fact }
    }

    fn size(&self) -> usize {
        self.perms.len()
    }

    fn rank(&self, p: &[u8; 8]) -> u32 {
        let mut r = 0;
        for i in 0..self.n {
            let smaller = (i + 1..self.n).filter(|&j| p[j] < p[i]).count() as u32;
            r += smaller * self.fact[self.n - 1 - i];
        }
        r
    }

    /// Rank of `a ∘ b`.
    fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = &self.perms[a as usize];
        let pb = &self.perms[b as usize];
        let mut c = [0u8; 8];
        for i in 0..self.n {
            c[i] = pa[pb[i] as usize];
        }
        self.rank(&c)
    }

    fn inv(&self, a: u32) -> u32 {
        let pa = &self.perms[a as usize];
        let mut c = [0u8; 8];
        for i in 0..self.n {
            c[pa[i] as usize] = i as u8;
        }
        self.rank(&c)
    }

    fn conj(&self, c: u32, x: u32, c_inv: u32) -> u32 {
        self.mul(self.mul(c, x), c_inv)
    }

    fn order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn to_perm(&self, a: u32) -> Permutation {
        let p = &self.perms[a as usize];
        Permutation::from_images(p[..self.n].iter().map(|&v| v as u32).collect()).unwrap()
    }

    fn perm_index(&self, g: &Permutation) -> u32 {
        let mut p = [0u8; 8];
        for (i, &v) in g.images().iter().enumerate() {
            p[i] = v as u8;
        }
        self.rank(&p)
    }

    fn group_order(&self, gens: &[u32]) -> BigUint {
        let gens: Vec<Permutation> = gens.iter().map(|&g| self.to_perm(g)).collect();
        PermGroup::new(self.n, gens).order()
    }

    /// Closure of `start` (a subgroup, given as sorted elements) and `extra`.
    fn closure(&self, start: &[u32], start_gens: &[u32], extra: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.size()];
        let mut elems: Vec<u32> = start.to_vec();
        if elems.is_empty() {
            elems.push(0);
        }
        for &e in &elems {
            seen[e as usize] = true;
        }
        let gens: Vec<u32> = start_gens.iter().chain(extra).copied().collect();
        let mut i = 0;
        while i < elems.len() {
            let e = elems[i];
            for &g in &gens {
                let p = self.mul(e, g);
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    fn is_transitive(&self, gens: &[u32]) -> bool {
        let mut seen = [false; 8];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.perms[g as usize][x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen[..self.n].iter().all(|&b| b)
    }
}

fn hash_set(elems: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    elems.hash(&mut h);
    h.finish()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ordinary,
    Alternating,
    Symmetric,
}

struct Class {
    kind: Kind,
    gens: Vec<u32>,
    /// Sorted elements; empty for `A_n` and `S_n`.
    elems: Vec<u32>,
    normalizer_gens: Vec<u32>,
    /// Smallest conjugate (by sorted element list) and an element `c`
    /// with `c K c⁻¹` equal to it.
    min_conj: u32,
}

struct Enumerator {
    sym: Sym,
    classes: Vec<Class>,
    /// (order, hash of sorted elements) of every conjugate -> (class, c)
    index: HashMap<u64, Vec<(usize, u32)>>,
    alt: Option<usize>,
    symm: Option<usize>,
}

impl Enumerator {
    fn new(n: usize) -> Self {
        Enumerator {
            sym: Sym::new(n),
            classes: Vec::new(),
            index: HashMap::new(),
            alt: None,
            symm: None,
        }
    }

    fn full_order(&self) -> BigUint {
        BigUint::from(self.sym.size())
    }

    /// Class id of `⟨base, extra⟩`, registering it if new. `base_elems` is
    /// the sorted element list of `⟨base_gens⟩`.
    fn find_or_insert(&mut self, base_elems: &[u32], base_gens: &[u32], extra: &[u32]) -> usize {
        let all_gens: Vec<u32> = base_gens.iter().chain(extra).copied().collect();
        let order = self.sym.group_order(&all_gens);
        let full = self.full_order();
        if order == full {
            return self.special(Kind::Symmetric);
        }
        if order.clone() * 2u32 == full {
            return self.special(Kind::Alternating);
        }
        let elems = self.sym.closure(base_elems, base_gens, extra);
        let h = hash_set(&elems);
        if let Some(hits) = self.index.get(&h) {
            for &(cid, c) in hits {
                let cls = &self.classes[cid];
                if cls.elems.len() != elems.len() {
                    continue;
                }
                let ci = self.sym.inv(c);
                let ok = cls
                    .gens
                    .iter()
                    .all(|&k| elems.binary_search(&self.sym.conj(c, k, ci)).is_ok());
                if ok {
                    return cid;
                }
            }
        }
        let gens = self.minimal_generators(&elems);
        self.register(gens, elems)
    }

    fn special(&mut self, kind: Kind) -> usize {
        let slot = match kind {
            Kind::Alternating => self.alt,
            _ => self.symm,
        };
        if let Some(id) = slot {
            return id;
        }
        let n = self.sym.n;
        let g = match kind {
            Kind::Alternating => PermGroup::alternating(n),
            _ => PermGroup::symmetric(n),
        };
        let gens: Vec<u32> = g
            .generators()
            .iter()
            .map(|p| self.sym.perm_index(p))
            .collect();
        let id = self.classes.len();
        self.classes.push(Class {
            kind,
            gens,
            elems: Vec::new(),
            normalizer_gens: Vec::new(),
            min_conj: 0,
        });
        match kind {
            Kind::Alternating => self.alt = Some(id),
            _ => self.symm = Some(id),
        }
        id
    }

    /// Greedy generating set taken from the elements in ascending order.
    fn minimal_generators(&self, elems: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = vec![0u32];
        for &e in elems {
            if current.binary_search(&e).is_err() {
                gens.push(e);
                current = self.sym.closure(&current, &gens[..gens.len() - 1], &[e]);
                if current.len() == elems.len() {
                    break;
                }
            }
        }
        gens
    }

    fn register(&mut self, gens: Vec<u32>, elems: Vec<u32>) -> usize {
        let sym = &self.sym;
        let size = sym.size();
        let mut in_k = vec![false; size];
        for &e in &elems {
            in_k[e as usize] = true;
        }
        let normal: Vec<u32> = (0..size as u32)
            .filter(|&c| {
                let ci = sym.inv(c);
                gens.iter().all(|&k| in_k[sym.conj(c, k, ci) as usize])
            })
            .collect();
        let normalizer_gens = self.minimal_generators(&normal);
        let id = self.classes.len();
        let mut covered = vec![false; size];
        let mut best: Option<(Vec<u32>, u32)> = None;
        for c in 0..size as u32 {
            if covered[c as usize] {
                continue;
            }
            for &m in &normal {
                covered[sym.mul(c, m) as usize] = true;
            }
            let ci = sym.inv(c);
            let mut conj: Vec<u32> = elems.iter().map(|&k| sym.conj(c, k, ci)).collect();
            conj.sort_unstable();
            self.index.entry(hash_set(&conj)).or_default().push((id, c));
            if best.as_ref().is_none_or(|(b, _)| conj < *b) {
                best = Some((conj, c));
            }
        }
        self.classes.push(Class {
            kind: Kind::Ordinary,
            gens,
            elems,
            normalizer_gens,
            min_conj: best.unwrap().1,
        });
        id
    }

    /// Adds one element at a time to class `id`. Candidates are skipped when
    /// they lie in the orbit of an earlier candidate under left and right
    /// multiplication by `K`, conjugation by `N(K)` and coprime powers,
    /// all of which give the same group up to conjugacy.
    fn expand(&mut self, id: usize) -> Vec<usize> {
        let cls = &self.classes[id];
        let mut found = Vec::new();
        match cls.kind {
            Kind::Symmetric => return found,
            Kind::Alternating => {
                found.push(self.special(Kind::Symmetric));
                return found;
            }
            Kind::Ordinary => {}
        }
        let size = self.sym.size();
        let mut covered = vec![false; size];
        for &e in &cls.elems {
            covered[e as usize] = true;
        }
        let kgens = cls.gens.clone();
        let kelems = cls.elems.clone();
        let ngens: Vec<(u32, u32)> = cls
            .normalizer_gens
            .iter()
            .map(|&c| (c, self.sym.inv(c)))
            .collect();
        for g in 0..size as u32 {
            if covered[g as usize] {
                continue;
            }
            found.push(self.find_or_insert(&kelems, &kgens, &[g]));
            // cover the orbit of g
            let sym = &self.sym;
            covered[g as usize] = true;
            let mut stack = vec![g];
            while let Some(x) = stack.pop() {
                let ord = sym.order(x);
                let mut next: Vec<u32> = Vec::new();
                for &h in &kgens {
                    next.push(sym.mul(h, x));
                    next.push(sym.mul(x, h));
                }
                for &(c, ci) in &ngens {
                    next.push(sym.conj(c, x, ci));
                }
                let mut p = x;
                for e in 2..ord {
                    p = sym.mul(p, x);
                    if num_integer::gcd(e, ord) == 1 {
                        next.push(p);
                    }
                }
                for y in next {
                    if !covered[y as usize] {
                        covered[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
        }
        found
    }

    /// Breadth-first closure of the class set under "add one element".
    fn grow(&mut self, seeds: Vec<usize>) {
        let mut queue = seeds;
        let mut expanded = vec![false; self.classes.len()];
        let mut i = 0;
        while i < queue.len() {
            let id = queue[i];
            i += 1;
            if expanded.get(id).copied().unwrap_or(false) {
                continue;
            }
            if expanded.len() <= id {
                expanded.resize(id + 1, false);
            }
            expanded[id] = true;
            for k in self.expand(id) {
                if expanded.get(k).copied().unwrap_or(false) {
                    continue;
                }
                queue.push(k);
            }
        }
    }

    fn class_group(&self, id: usize) -> PermGroup {
        let cls = &self.classes[id];
        let n = self.sym.n;
        match cls.kind {
            Kind::Alternating => PermGroup::alternating(n),
            Kind::Symmetric => PermGroup::symmetric(n),
            Kind::Ordinary => {
                let c = cls.min_conj;
                let ci = self.sym.inv(c);
                let mut elems: Vec<u32> =
                    cls.elems.iter().map(|&k| self.sym.conj(c, k, ci)).collect();
                elems.sort_unstable();
                let gens = self.minimal_generators(&elems);
                PermGroup::new(n, gens.iter().map(|&g| self.sym.to_perm(g)).collect())
            }
        }
    }

    fn is_transitive(&self, id: usize) -> bool {
        self.sym.is_transitive(&self.classes[id].gens)
    }
}

/// Transitive subgroups of the Sylow `p`-subgroup of `S_{p^k}`, as seeds.
/// Every transitive group of prime-power degree contains one.
fn sylow_seeds(en: &mut Enumerator, p: usize, k: u32) -> Vec<usize> {
    let n = en.sym.n;
    let mut gens = Vec::new();
    for j in 0..k {
        let step = p.pow(j);
        let mut img: Vec<u32> = (0..n as u32).collect();
        for i in 0..step {
            for t in 0..p {
                let from = i + t * step;
                let to = i + ((t + 1) % p) * step;
                img[from] = to as u32;
            }
        }
        gens.push(en.sym.perm_index(&Permutation::from_images(img).unwrap()));
    }
    let elems = en.sym.closure(&[], &gens, &[]);
    assert!(elems.len() <= 128);
    let m = elems.len();
    let pos = |x: u32| elems.binary_search(&x).unwrap();
    let mult: Vec<Vec<u8>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| pos(en.sym.mul(a, b)) as u8).collect())
        .collect();
    let close = |set: u128, gens: &[usize]| -> u128 {
        let mut s = set | 1;
        let mut list: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
        let mut i = 0;
        while i < list.len() {
            let e = list[i];
            for &g in gens {
                let q = mult[e][g] as usize;
                if s >> q & 1 == 0 {
                    s |= 1 << q;
                    list.push(q);
                }
            }
            i += 1;
        }
        s
    };
    // all subgroups of P, each with a generating set
    let mut subgroups: HashMap<u128, Vec<usize>> = HashMap::new();
    subgroups.insert(1, Vec::new());
    let mut queue: Vec<u128> = vec![1];
    let mut qi = 0;
    while qi < queue.len() {
        let s = queue[qi];
        qi += 1;
        let sg = subgroups[&s].clone();
        let mut covered = s;
        for x in 0..m {
            if covered >> x & 1 == 1 {
                continue;
            }
            let mut g2 = sg.clone();
            g2.push(x);
            let t = close(s, &g2);
            covered |= t;
            if let std::collections::hash_map::Entry::Vacant(e) = subgroups.entry(t) {
                e.insert(g2);
                queue.push(t);
            }
        }
    }
    let mut keys: Vec<u128> = subgroups.keys().copied().collect();
    keys.sort_unstable();
    let mut seeds = Vec::new();
    for key in keys {
        let g: Vec<u32> = subgroups[&key].iter().map(|&i| elems[i]).collect();
        if en.sym.is_transitive(&g) {
            let elems = en.sym.closure(&[], &g, &[]);
            seeds.push(en.find_or_insert(&elems, &g, &[]));
        }
    }
    seeds
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// All transitive subgroups of `S_n` up to conjugacy, sorted by order and
/// then by generator list. `None` when `n` is 0 or above the built-in range.
pub fn transitive_groups(n: usize) -> Option<Vec<PermGroup>> {
    if n == 0 || n > MAX_BUILTIN_DEGREE {
        return None;
    }
    if n == 1 {
        return Some(vec![PermGroup::trivial(1)]);
    }
    let mut en = Enumerator::new(n);
    let seeds = match prime_power(n) {
        Some((p, k)) => sylow_seeds(&mut en, p, k),
        None => vec![en.find_or_insert(&[0], &[], &[])],
    };
    en.grow(seeds);
    let mut out: Vec<(BigUint, Vec<Permutation>, PermGroup)> = (0..en.classes.len())
        .filter(|&id| en.is_transitive(id))
        .map(|id| {
            let g = en.class_group(id);
            (g.order(), g.generators().to_vec(), g)
        })
        .collect();
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    Some(out.into_iter().map(|t| t.2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::BTreeSet;

    fn order_u64(g: &PermGroup) -> u64 {
        g.order().to_u64().unwrap()
    }

    #[test]
    fn lehmer_rank_roundtrip() {
        let s = Sym::new(5);
        for r in 0..120u32 {
            assert_eq!(s.rank(&s.perms[r as usize]), r);
        }
        assert_eq!(s.perms[0][..5], [0, 1, 2, 3, 4]);
        let a = 37;
        assert_eq!(s.mul(a, s.inv(a)), 0);
    }

    /// Transitive classes by conjugation-dedup of every two-generated
    /// subgroup, keyed by the smallest conjugate's element set.
    fn two_generated_oracle(n: usize) -> BTreeSet<Vec<u32>> {
        let s = Sym::new(n);
        let size = s.size() as u32;
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut out = BTreeSet::new();
        for a in 0..size {
            for b in a..size {
                let elems = s.closure(&[], &[a, b], &[]);
                if !seen.insert(elems.clone()) || !s.is_transitive(&[a, b]) {
                    continue;
                }
                let key = (0..size)
                    .map(|c| {
                        let ci = s.inv(c);
                        let mut v: Vec<u32> = elems.iter().map(|&k| s.conj(c, k, ci)).collect();
                        v.sort_unstable();
                        v
                    })
                    .min()
                    .unwrap();
                out.insert(key);
            }
        }
        out
    }

    #[test]
    fn matches_two_generated_oracle() {
        for n in [3, 4, 5] {
            let oracle = two_generated_oracle(n);
            let s = Sym::new(n);
            let ours: BTreeSet<Vec<u32>> = transitive_groups(n)
                .unwrap()
                .iter()
                .map(|g| {
                    let gens: Vec<u32> = g.generators().iter().map(|p| s.perm_index(p)).collect();
                    let elems = s.closure(&[], &gens, &[]);
                    (0..s.size() as u32)
                        .map(|c| {
                            let ci = s.inv(c);
                            let mut v: Vec<u32> = elems.iter().map(|&k| s.conj(c, k, ci)).collect();
                            v.sort_unstable();
                            v
                        })
                        .min()
                        .unwrap()
                })
                .collect();
            assert_eq!(ours, oracle, "degree {n}");
        }
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (2..=7)
            .map(|n| transitive_groups(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 5, 16, 7]);
        assert!(transitive_groups(9).is_none());
    }

    #[test]
    fn sorted_and_transitive() {
        let gs = transitive_groups(6).unwrap();
        let orders: Vec<u64> = gs.iter().map(order_u64).collect();
        assert_eq!(
            orders,
            vec![6, 6, 12, 12, 18, 24, 24, 24, 36, 36, 48, 60, 72, 120, 360, 720]
        );
        assert!(gs.iter().all(|g| g.is_transitive()));
    }
}
