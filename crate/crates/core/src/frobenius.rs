//! Frobenius cycle types of `F` and `F(T^2)` modulo primes, compared with
//! the cycle types of a candidate subgroup of `S2 wr S6`.
//!
//! Points of the twelve-point action are numbered so that `2i` and `2i + 1`
//! are the two square roots of the `i`-th root of `F`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::{ddf_cycle_type, small_primes};
use crate::field::{Rationals, SqrtField};
use crate::kummer::{KummerPlan, OrbitSpec};
use crate::poly::{discriminant, UniPoly};

pub type CycleType = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTypeSample {
    pub p: u64,
    pub sextic: CycleType,
    pub doubled: CycleType,
}

impl CycleTypeSample {
    /// Each part `d` of the sextic type contributes either `d, d` or `2d`
    /// to the doubled type.
    pub fn pair_refinement_holds(&self) -> bool {
        let mut rest: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in &self.doubled {
            *rest.entry(d).or_default() += 1;
        }
        let mut parts = self.sextic.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        fn take(m: &mut BTreeMap<usize, usize>, d: usize, n: usize) -> bool {
            match m.get_mut(&d) {
                Some(c) if *c >= n => {
                    *c -= n;
                    true
                }
                _ => false,
            }
        }
        fn give(m: &mut BTreeMap<usize, usize>, d: usize, n: usize) {
            *m.entry(d).or_default() += n;
        }
        fn search(parts: &[usize], m: &mut BTreeMap<usize, usize>) -> bool {
            let Some((&d, tail)) = parts.split_first() else {
                return m.values().all(|&c| c == 0);
            };
            if take(m, 2 * d, 1) {
                if search(tail, m) {
                    return true;
                }
                give(m, 2 * d, 1);
            }
            if take(m, d, 2) {
                if search(tail, m) {
                    return true;
                }
                give(m, d, 2);
            }
            false
        }
        search(&parts, &mut rest)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleSet {
    pub samples: Vec<CycleTypeSample>,
    pub bad_primes: usize,
}

/// Cycle types of `F` and `F(T^2)` modulo every good odd prime up to
/// `primes_up_to`. Primes are processed in parallel; output is sorted by
/// prime.
pub fn sample(f: &UniPoly<Rationals>, primes_up_to: u64) -> SampleSet {
    let doubled = f.compose_square();
    let results: Vec<Option<CycleTypeSample>> = small_primes(primes_up_to)
        .into_par_iter()
        .map(|p| {
            let sextic = ddf_cycle_type(f, p).ok()?;
            let doubled = ddf_cycle_type(&doubled, p).ok()?;
            Some(CycleTypeSample { p, sextic, doubled })
        })
        .collect();
    let bad_primes = results.iter().filter(|r| r.is_none()).count();
    SampleSet { samples: results.into_iter().flatten().collect(), bad_primes }
}

/// Whether `disc(F(T^2))` is a square in Q, i.e. the Galois group of
/// `F(T^2)` lies in the alternating group.
pub fn even_check(f: &UniPoly<Rationals>) -> Result<bool> {
    let d = discriminant(&f.compose_square())?;
    Ok(!d.is_negative() && Rationals.is_square(&d))
}

/// A permutation of `0..n`, stored as the list of images.
pub type Perm = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Perm {
    // first a, then b
    a.iter().map(|&i| b[i]).collect()
}

pub fn cycle_type(p: &[usize]) -> CycleType {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

fn is_even(p: &[usize]) -> bool {
    cycle_type(p).iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
}

/// The action on the six pairs induced by a block-preserving permutation.
fn block_image(p: &[usize]) -> Option<Perm> {
    let mut out = Vec::with_capacity(p.len() / 2);
    for i in 0..p.len() / 2 {
        let (a, b) = (p[2 * i] / 2, p[2 * i + 1] / 2);
        if a != b {
            return None;
        }
        out.push(a);
    }
    Some(out)
}

/// Lift of a permutation of the pairs, flipping the pairs in `flips`.
pub fn lift(sigma: &[usize], flips: &[bool]) -> Perm {
    let mut out = vec![0; 2 * sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        let f = flips[i] as usize;
        out[2 * i] = 2 * s + f;
        out[2 * i + 1] = 2 * s + 1 - f;
    }
    out
}

/// Elements of the group generated by `gens`, by breadth-first closure.
fn enumerate(gens: &[Perm], n: usize, limit: usize) -> Result<Vec<Perm>> {
    let id: Perm = (0..n).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return Err(Error::InvalidInput(format!("group has more than {limit} elements")));
                }
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// A subgroup of `S2 wr S6` on twelve points with its cycle-type census.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupModel {
    pub generators: Vec<Perm>,
    pub order: usize,
    /// Cycle types on the twelve square roots, with multiplicities.
    pub census: BTreeMap<CycleType, usize>,
    /// Cycle types of the induced action on the six pairs.
    pub pair_census: BTreeMap<CycleType, usize>,
    pub even: bool,
}

impl GroupModel {
    pub fn from_generators(generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            let valid = g.len() == 12 && (0..12).all(|i| g.contains(&i));
            if !valid {
                return Err(Error::InvalidInput("generators must be permutations of 0..12".into()));
            }
            if block_image(g).is_none() {
                return Err(Error::InvalidInput("generator does not preserve the six pairs".into()));
            }
        }
        let elems = enumerate(&generators, 12, 46080)?;
        let mut census = BTreeMap::new();
        let mut pair_census = BTreeMap::new();
        for e in &elems {
            *census.entry(cycle_type(e)).or_default() += 1;
            *pair_census.entry(cycle_type(&block_image(e).unwrap())).or_default() += 1;
        }
        let even = elems.iter().all(|e| is_even(e));
        Ok(GroupModel { generators, order: elems.len(), census, pair_census, even })
    }

    pub fn trivial() -> Self {
        Self::from_generators(Vec::new()).unwrap()
    }

    /// `S2 wr S6`.
    pub fn wreath() -> Self {
        Self::from_generators(wreath_generators(false)).unwrap()
    }

    /// `(S2 wr S6) & A12`.
    pub fn even_wreath() -> Self {
        Self::from_generators(wreath_generators(true)).unwrap()
    }

    /// An upper bound for the Galois group of `F(T^2)` for a plan.
    ///
    /// The pairs of each orbit are permuted by the given generators on that
    /// orbit's roots (the full symmetric group when `None`); the sign flips
    /// are the vectors orthogonal to every subset of rational entries and
    /// orbit norms whose product is a square in Q.
    pub fn intended(plan: &KummerPlan, galois: &[Option<Vec<Perm>>]) -> Result<Self> {
        let mut offset = 0;
        let mut sigma_gens: Vec<Perm> = Vec::new();
        // Index sets of the rational square classes and their values.
        let mut classes: Vec<(Vec<usize>, num_rational::BigRational)> = Vec::new();
        for (idx, o) in plan.orbits.iter().enumerate() {
            match o {
                OrbitSpec::Rational(v) => {
                    for (j, a) in v.iter().enumerate() {
                        classes.push((vec![offset + j], a.clone()));
                    }
                }
                OrbitSpec::Field { m, a, t } => {
                    let n = m.deg0();
                    let twisted = crate::kummer::square_twist(m, a, t)?;
                    let norm = crate::kummer::norm(m, &twisted);
                    classes.push(((offset..offset + n).collect(), norm));
                    let local: Vec<Perm> = match galois.get(idx).cloned().flatten() {
                        Some(g) => g,
                        None => symmetric_generators(n),
                    };
                    for g in local {
                        if g.len() != n || !(0..n).all(|i| g.contains(&i)) {
                            return Err(Error::InvalidInput(format!("bad Galois generator {g:?}")));
                        }
                        let mut s: Perm = (0..6).collect();
                        for i in 0..n {
                            s[offset + i] = offset + g[i];
                        }
                        sigma_gens.push(lift(&s, &[false; 6]));
                    }
                }
            }
            offset += o.size();
        }
        let mut relations: Vec<[bool; 6]> = Vec::new();
        for mask in 1u32..(1 << classes.len()) {
            let mut prod = num_rational::BigRational::from_integer(1.into());
            let mut support = [false; 6];
            for (b, (idx, val)) in classes.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    prod *= val;
                    for &i in idx {
                        support[i] = true;
                    }
                }
            }
            if Rationals.is_square(&prod) {
                relations.push(support);
            }
        }
        let mut flips: Vec<[bool; 6]> = Vec::new();
        for v in 1u32..64 {
            let e: [bool; 6] = std::array::from_fn(|i| v >> i & 1 == 1);
            let ok = relations
                .iter()
                .all(|r| (0..6).filter(|&i| r[i] && e[i]).count() % 2 == 0);
            if ok {
                flips.push(e);
            }
        }
        let id: Perm = (0..6).collect();
        let mut gens = sigma_gens;
        gens.extend(f2_basis(&flips).iter().map(|e| lift(&id, e)));
        Self::from_generators(gens)
    }

    pub fn distinct_types(&self) -> usize {
        self.census.len()
    }
}

fn symmetric_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return Vec::new();
    }
    let swap: Perm = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
    vec![swap, cycle]
}

fn wreath_generators(even: bool) -> Vec<Perm> {
    let none = [false; 6];
    let mut gens: Vec<Perm> = symmetric_generators(6).iter().map(|s| lift(s, &none)).collect();
    let id: Perm = (0..6).collect();
    let mut f = [false; 6];
    f[0] = true;
    if even {
        f[1] = true;
    }
    gens.push(lift(&id, &f));
    gens
}

fn f2_basis(vectors: &[[bool; 6]]) -> Vec<[bool; 6]> {
    let mut basis: Vec<[bool; 6]> = Vec::new();
    let mut reduced: Vec<[bool; 6]> = Vec::new();
    for v in vectors {
        let mut w = *v;
        for r in &reduced {
            let p = r.iter().position(|&b| b).unwrap();
            if w[p] {
                for i in 0..6 {
                    w[i] ^= r[i];
                }
            }
        }
        if w.iter().any(|&b| b) {
            reduced.push(w);
            basis.push(*v);
        }
    }
    basis
}

/// Candidate groups `<kernel, lifts of base generators>` of order
/// `|kernel| * |base|`: every choice of even lift of each base generator
/// is tried, and duplicates are removed.
pub fn extension_candidates(base_gens: &[Perm], kernel: &[[bool; 6]], base_order: usize) -> Result<Vec<GroupModel>> {
    let id: Perm = (0..6).collect();
    let kernel_gens: Vec<Perm> = f2_basis(kernel).iter().map(|e| lift(&id, e)).collect();
    let kernel_size = 1usize << kernel_gens.len();
    let target = kernel_size * base_order;
    let even_flips: Vec<[bool; 6]> = (0u32..64)
        .map(|v| std::array::from_fn(|i| v >> i & 1 == 1))
        .collect();
    let lifts_of = |s: &Perm| -> Vec<Perm> {
        even_flips
            .iter()
            .map(|f| lift(s, f))
            .filter(|p| is_even(p))
            .collect()
    };
    let options: Vec<Vec<Perm>> = base_gens.iter().map(lifts_of).collect();
    let mut seen: BTreeSet<(BTreeMap<CycleType, usize>, BTreeMap<CycleType, usize>)> = BTreeSet::new();
    let mut groups: Vec<GroupModel> = Vec::new();
    let mut idx = vec![0usize; options.len()];
    loop {
        let mut gens = kernel_gens.clone();
        gens.extend(idx.iter().zip(&options).map(|(&i, o)| o[i].clone()));
        if let Ok(elems) = enumerate(&gens, 12, target) {
            if elems.len() == target {
                let g = GroupModel::from_generators(gens)?;
                if seen.insert((g.census.clone(), g.pair_census.clone())) {
                    groups.push(g);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(groups);
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Primes whose doubled cycle type is missing from the census.
    pub violations: Vec<u64>,
    /// Primes whose sextic cycle type is missing from the pair census.
    pub pair_violations: Vec<u64>,
    pub observed: BTreeSet<CycleType>,
    /// Fraction of the census's distinct cycle types that were observed.
    pub coverage: f64,
}

impl ConsistencyReport {
    pub fn verdict(&self) -> &'static str {
        if self.consistent {
            "consistent with"
        } else {
            "inconsistent with"
        }
    }
}

pub fn consistency(samples: &SampleSet, model: &GroupModel) -> ConsistencyReport {
    let mut violations = Vec::new();
    let mut pair_violations = Vec::new();
    let mut observed = BTreeSet::new();
    for s in &samples.samples {
        if model.census.contains_key(&s.doubled) {
            observed.insert(s.doubled.clone());
        } else {
            violations.push(s.p);
        }
        if !model.pair_census.contains_key(&s.sextic) {
            pair_violations.push(s.p);
        }
    }
    let coverage = observed.len() as f64 / model.census.len() as f64;
    ConsistencyReport {
        consistent: violations.is_empty() && pair_violations.is_empty(),
        violations,
        pair_violations,
        observed,
        coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_i64s(Rationals, c)
    }

    #[test]
    fn quadratic_smoke_sample() {
        let s = sample(&q(&[-2, 0, 1]), 7);
        let at7 = s.samples.iter().find(|x| x.p == 7).unwrap();
        assert_eq!(at7.sextic, vec![1, 1]);
        assert_eq!(at7.doubled.iter().sum::<usize>(), 4);
    }

    #[test]
    fn degree_sums_and_refinement() {
        let f = q(&[25, 0, 0, 0, 0, 0, 1]);
        let s = sample(&f, 200);
        assert!(!s.samples.is_empty());
        for x in &s.samples {
            assert_eq!(x.sextic.iter().sum::<usize>(), 6);
            assert_eq!(x.doubled.iter().sum::<usize>(), 12);
            assert!(x.pair_refinement_holds());
        }
    }

    #[test]
    fn refinement_rejects_impossible_pattern() {
        let s = CycleTypeSample { p: 3, sextic: vec![3, 3], doubled: vec![2, 4, 6] };
        assert!(!s.pair_refinement_holds());
        let ok = CycleTypeSample { p: 3, sextic: vec![3, 3], doubled: vec![3, 3, 6] };
        assert!(ok.pair_refinement_holds());
    }

    #[test]
    fn even_check_examples() {
        assert!(even_check(&q(&[25, 0, 0, 0, 0, 0, 1])).unwrap());
        assert!(!even_check(&q(&[3, 0, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn wreath_orders() {
        assert_eq!(GroupModel::wreath().order, 46080);
        let e = GroupModel::even_wreath();
        assert_eq!(e.order, 23040);
        assert!(e.even);
    }

    #[test]
    fn trivial_model_rejects_nontrivial_sample() {
        let f = q(&[25, 0, 0, 0, 0, 0, 1]);
        let s = sample(&f, 100);
        assert!(!consistency(&s, &GroupModel::trivial()).consistent);
        assert!(consistency(&s, &GroupModel::wreath()).consistent);
    }

    #[test]
    fn intended_group_for_rational_squares() {
        // All entries squares: Kummer part trivial, sigma part trivial.
        let plan = KummerPlan::rational(&[1, 4, 9, 16, 25, 36]).unwrap();
        let g = GroupModel::intended(&plan, &[]).unwrap();
        assert_eq!(g.order, 1);
        // Independent non-square classes 2, 3, 5, 7, 11 with the sixth
        // entry making the product a square: flips of even weight.
        let plan = KummerPlan::rational(&[2, 3, 5, 7, 11, 2310]).unwrap();
        let g = GroupModel::intended(&plan, &[]).unwrap();
        assert_eq!(g.order, 32);
        assert!(g.even);
    }

    #[test]
    fn symmetric_generators_generate() {
        for n in 2..=6 {
            let els = enumerate(&symmetric_generators(n), n, 1000).unwrap();
            assert_eq!(els.len(), (1..=n).product::<usize>());
        }
    }
}
