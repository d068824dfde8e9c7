//! Permutations and permutation groups with a base and strong generating set.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A permutation of `0..n`, acting on the right: `i^g = g.apply(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Perm(images.into_iter().map(|i| i as u32).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths, sorted ascending (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// The permutation induced on `points` (an invariant set), renumbered by
    /// position in `points`.
    pub fn restrict(&self, points: &[usize]) -> Option<Perm> {
        let index: BTreeMap<usize, usize> = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let images = points
            .iter()
            .map(|&p| index.get(&self.apply(p)).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(Perm::from_images(images))
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps `point` to `b` for every `b` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn rebuild(&mut self) {
        let n = self.transversal.len();
        self.transversal = vec![None; n];
        self.transversal[self.point] = Some(Perm::identity(n));
        self.orbit = vec![self.point];
        let mut next = 0;
        while next < self.orbit.len() {
            let b = self.orbit[next];
            next += 1;
            let u = self.transversal[b].clone().unwrap();
            for g in &self.gens {
                let c = g.apply(b);
                if self.transversal[c].is_none() {
                    self.transversal[c] = Some(u.then(g));
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A permutation group stored as a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        Self::with_base(degree, generators, &[], 0)
    }

    /// Builds the chain with `prefix` as the start of the base, so that
    /// pointwise stabilizers of the prefix are read off the chain.
    pub fn with_base(degree: usize, generators: Vec<Perm>, prefix: &[usize], seed: u64) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        let generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut group = PermGroup { degree, generators, levels: Vec::new() };
        for &p in prefix {
            group.levels.push(Level::new(p, degree));
        }
        group.schreier_sims(seed);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` through the chain; returns the residue and the level at which
    /// sifting stopped.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.point);
            match &level.transversal[b] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Adds a nontrivial residue that fixes the base points before `level`.
    fn add_strong_generator(&mut self, h: Perm, level: usize) {
        if level == self.levels.len() {
            let moved = (0..self.degree).find(|&i| h.apply(i) != i).expect("nontrivial residue");
            self.levels.push(Level::new(moved, self.degree));
        }
        for l in &mut self.levels[..=level] {
            l.gens.push(h.clone());
            l.rebuild();
        }
    }

    fn schreier_sims(&mut self, seed: u64) {
        if self.generators.is_empty() {
            self.levels.clear();
            return;
        }
        if self.levels.is_empty() {
            let g = &self.generators[0];
            let moved = (0..self.degree).find(|&i| g.apply(i) != i).unwrap();
            self.levels.push(Level::new(moved, self.degree));
        }
        for g in self.generators.clone() {
            let (h, at) = self.sift(&g, 0);
            if !h.is_identity() {
                self.add_strong_generator(h, at);
            }
        }
        self.random_phase(seed);
        while let Some((h, at)) = self.find_missing_schreier_generator() {
            self.add_strong_generator(h, at);
        }
        while self.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            self.levels.pop();
        }
    }

    fn random_phase(&mut self, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state: Vec<Perm> = Vec::new();
        while state.len() < 10 {
            state.extend(self.generators.iter().cloned());
        }
        let mut acc = Perm::identity(self.degree);
        let step = |state: &mut Vec<Perm>, acc: &mut Perm, rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..state.len());
            let mut j = rng.gen_range(0..state.len());
            while j == i {
                j = rng.gen_range(0..state.len());
            }
            state[i] = if rng.gen_bool(0.5) { state[i].then(&state[j]) } else { state[j].then(&state[i]) };
            *acc = acc.then(&state[i]);
            acc.clone()
        };
        for _ in 0..50 {
            step(&mut state, &mut acc, &mut rng);
        }
        let mut quiet = 0;
        while quiet < 40 {
            let g = step(&mut state, &mut acc, &mut rng);
            let (h, at) = self.sift(&g, 0);
            if h.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                self.add_strong_generator(h, at);
            }
        }
    }

    /// The first Schreier generator, scanning from the bottom of the chain,
    /// that does not sift through the levels below it.
    fn find_missing_schreier_generator(&self) -> Option<(Perm, usize)> {
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            for &b in &level.orbit {
                let u = level.transversal[b].as_ref().unwrap();
                for s in &level.gens {
                    let c = s.apply(b);
                    let v = level.transversal[c].as_ref().unwrap();
                    let schreier = u.then(s).then(&v.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, at) = self.sift(&schreier, i + 1);
                    if !h.is_identity() {
                        return Some((h, at));
                    }
                }
            }
        }
        None
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    fn stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        match self.levels.get(k) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }

    /// The stabilizer of the point `p`.
    pub fn stabilizer(&self, p: usize, seed: u64) -> PermGroup {
        let chain = PermGroup::with_base(self.degree, self.generators.clone(), &[p], seed);
        PermGroup::new(self.degree, chain.stabilizer_generators(1))
    }

    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut orbit = vec![p];
        let mut next = 0;
        while next < orbit.len() {
            let b = orbit[next];
            next += 1;
            for g in &self.generators {
                let c = g.apply(b);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits on `0..degree`, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &q in &o {
                    seen[q] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Orbit lengths restricted to `points`, sorted ascending.
    pub fn orbit_type_on(&self, points: &[usize]) -> Vec<usize> {
        let set: std::collections::BTreeSet<usize> = points.iter().copied().collect();
        let mut lens: Vec<usize> = self
            .orbits()
            .into_iter()
            .filter(|o| set.contains(&o[0]))
            .map(|o| o.len())
            .collect();
        lens.sort_unstable();
        lens
    }

    pub fn is_transitive_on(&self, points: &[usize]) -> bool {
        points.is_empty() || self.orbit(points[0]).len() == points.len()
    }

    /// The group induced on an invariant set of points.
    pub fn restrict(&self, points: &[usize]) -> Option<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict(points))
            .collect::<Option<Vec<_>>>()?;
        Some(PermGroup::new(points.len(), gens))
    }

    /// A uniformly distributed element, read off the chain.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.transversal[b].as_ref().unwrap());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&cycle])])
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(symmetric(2).order(), 2);
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(symmetric(9).order(), 362_880);
    }

    #[test]
    fn alternating_membership() {
        let n = 7;
        let gens: Vec<Perm> = (2..n).map(|k| Perm::from_cycles(n, &[&[0, 1, k]])).collect();
        let a7 = PermGroup::new(n, gens);
        assert_eq!(a7.order(), 2520);
        assert!(a7.contains(&Perm::from_cycles(n, &[&[0, 1], &[2, 3]])));
        assert!(!a7.contains(&Perm::from_cycles(n, &[&[0, 1]])));
    }

    #[test]
    fn cyclic_and_dihedral() {
        let c = Perm::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]);
        assert_eq!(PermGroup::new(8, vec![c.clone()]).order(), 8);
        let r = Perm::from_cycles(8, &[&[1, 7], &[2, 6], &[3, 5]]);
        let d8 = PermGroup::new(8, vec![c, r]);
        assert_eq!(d8.order(), 16);
        assert_eq!(d8.orbits().len(), 1);
    }

    #[test]
    fn stabilizer_index_and_wreath() {
        // S2 wr S3 on 6 points: order 48.
        let n = 6;
        let gens = vec![
            Perm::from_cycles(n, &[&[0, 1]]),
            Perm::from_cycles(n, &[&[0, 2], &[1, 3]]),
            Perm::from_cycles(n, &[&[0, 2, 4], &[1, 3, 5]]),
        ];
        let g = PermGroup::new(n, gens);
        assert_eq!(g.order(), 48);
        let s = g.stabilizer(0, 1);
        assert_eq!(s.order(), 8);
        assert_eq!(s.orbit_type_on(&(0..n).collect::<Vec<_>>()), vec![1, 1, 4]);
    }

    #[test]
    fn random_elements_are_members() {
        let g = symmetric(6);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
        let other = Perm::identity(7);
        assert!(!g.contains(&other));
    }

    #[test]
    fn perm_algebra() {
        let a = Perm::from_cycles(4, &[&[0, 1, 2]]);
        let b = Perm::from_cycles(4, &[&[2, 3]]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&b).apply(1), 3);
        assert_eq!(a.pow(3), Perm::identity(4));
        assert_eq!(a.cycle_type(), vec![1, 3]);
        assert!(a.is_even());
        assert!(!b.is_even());
        assert_eq!(Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).restrict(&[2, 3]), Some(Perm::from_cycles(2, &[&[0, 1]])));
        assert_eq!(a.restrict(&[0, 1]), None);
    }
}
