use num_bigint::BigUint;

use super::Permutation;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: usize,
    /// Orbit of `point` in discovery order; `orbit[0] == point`.
    pub orbit: Vec<usize>,
    /// `transversal[g]` maps `point` to `g`, for every `g` in the orbit.
    pub transversal: Vec<Option<Permutation>>,
    pub inverse: Vec<Option<Permutation>>,
}

/// Base and strong generating set built by deterministic Schreier–Sims.
///
/// New base points are always the smallest point moved by the element that
/// forces the extension, so the chain only depends on the generator list.
#[derive(Clone, Debug)]
pub(crate) struct Bsgs {
    degree: usize,
    base: Vec<usize>,
    /// Strong generators with the index of the first base point they move.
    strong: Vec<(usize, Permutation)>,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut b = Bsgs {
            degree,
            base: base_prefix.to_vec(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if b.first_moved_base(g).is_none() {
                let p = g.first_moved().unwrap();
                b.base.push(p);
            }
            let lvl = b.first_moved_base(g).unwrap();
            b.strong.push((lvl, g.clone()));
        }
        b.levels = b
            .base
            .iter()
            .map(|&p| Level {
                point: p,
                orbit: vec![p],
                transversal: Vec::new(),
                inverse: Vec::new(),
            })
            .collect();
        b.run();
        b
    }

    fn first_moved_base(&self, g: &Permutation) -> Option<usize> {
        self.base.iter().position(|&p| g.apply(p) != p)
    }

    fn level_gens(&self, i: usize) -> Vec<Permutation> {
        self.strong
            .iter()
            .filter(|(l, _)| *l >= i)
            .map(|(_, g)| g.clone())
            .collect()
    }

    fn compute_level(&mut self, i: usize) {
        let n = self.degree;
        let point = self.base[i];
        let gens = self.level_gens(i);
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        transversal[point] = Some(Permutation::identity(n));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let b = orbit[k];
            for s in &gens {
                let c = s.apply(b);
                if transversal[c].is_none() {
                    let u = s.compose(transversal[b].as_ref().unwrap());
                    transversal[c] = Some(u);
                    orbit.push(c);
                }
            }
            k += 1;
        }
        let inverse = transversal
            .iter()
            .map(|u| u.as_ref().map(|u| u.inverse()))
            .collect();
        self.levels[i] = Level {
            point,
            orbit,
            transversal,
            inverse,
        };
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn strip_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.point);
            match &level.inverse[b] {
                Some(inv) => h = inv.compose(&h),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn run(&mut self) {
        if self.base.is_empty() {
            return;
        }
        let mut i = self.base.len() as isize - 1;
        for l in 0..self.levels.len() {
            self.compute_level(l);
        }
        'outer: while i >= 0 {
            let iu = i as usize;
            self.compute_level(iu);
            let gens = self.level_gens(iu);
            let orbit = self.levels[iu].orbit.clone();
            for &b in &orbit {
                for s in &gens {
                    let sb = s.apply(b);
                    let ub = self.levels[iu].transversal[b].as_ref().unwrap();
                    let usb_inv = self.levels[iu].inverse[sb].as_ref().unwrap();
                    let schreier = usb_inv.compose(&s.compose(ub));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip_from(&schreier, iu + 1);
                    if h.is_identity() {
                        continue;
                    }
                    let j = if j == self.levels.len() {
                        // h fixes every base point: extend the base.
                        let p = h.first_moved().unwrap();
                        self.base.push(p);
                        self.levels.push(Level {
                            point: p,
                            orbit: vec![p],
                            transversal: Vec::new(),
                            inverse: Vec::new(),
                        });
                        self.levels.len() - 1
                    } else {
                        j
                    };
                    self.strong.push((j, h));
                    for l in iu + 1..=j {
                        self.compute_level(l);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = (usize, &Permutation)> {
        self.strong.iter().map(|(l, g)| (*l, g))
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip_from(g, 0).0.is_identity()
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.level_gens(k)
    }
}

/// Iterates every element of the group as a product of transversal elements,
/// `u_0 * u_1 * ... * u_{k-1}`. The identity comes first.
pub(crate) struct ElementIter<'a> {
    bsgs: &'a Bsgs,
    counters: Vec<usize>,
    done: bool,
}

impl<'a> ElementIter<'a> {
    pub fn new(bsgs: &'a Bsgs) -> Self {
        ElementIter {
            bsgs,
            counters: vec![0; bsgs.levels.len()],
            done: false,
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.bsgs.levels;
        let mut g = Permutation::identity(self.bsgs.degree);
        for (l, &c) in self.counters.iter().enumerate().rev() {
            let pt = levels[l].orbit[c];
            g = levels[l].transversal[pt].as_ref().unwrap().compose(&g);
        }
        // advance the mixed-radix counter, deepest level fastest
        let mut l = self.counters.len();
        loop {
            if l == 0 {
                self.done = true;
                break;
            }
            l -= 1;
            self.counters[l] += 1;
            if self.counters[l] < levels[l].orbit.len() {
                break;
            }
            self.counters[l] = 0;
        }
        Some(g)
    }
}
