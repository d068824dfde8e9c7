//! The 56 exceptional classes of a degree-two del Pezzo surface, their 28
//! Geiser blocks, the symplectic quotient and the Steiner hexads.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::lattice::{exceptional_classes, gram, index_of, reflection_perm, simple_roots, PicVector};
use crate::perm::{Perm, PermGroup};

/// The Weyl group of degree 2 or 3, acting on the sorted exceptional classes.
pub fn weyl_group(degree: u32) -> (Vec<PicVector>, PermGroup) {
    let classes = exceptional_classes(degree);
    let rank = classes[0].rank();
    let gens = simple_roots(rank).iter().map(|a| reflection_perm(&classes, a)).collect();
    let group = PermGroup::new(classes.len(), gens);
    (classes, group)
}

/// Mod-2 reduction of a class, one bit per coordinate.
pub fn mod2(v: &PicVector) -> u16 {
    v.coords().iter().enumerate().fold(0, |acc, (i, &x)| acc | (((x & 1) as u16) << i))
}

/// The intersection form mod 2.
pub fn dot2(a: u16, b: u16) -> u8 {
    ((a & b).count_ones() & 1) as u8
}

fn echelon_insert(basis: &mut Vec<u16>, v: u16) -> bool {
    let mut v = v;
    for &b in basis.iter() {
        let top = 15 - b.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    let top = 15 - v.leading_zeros();
    for b in basis.iter_mut() {
        if *b >> top & 1 == 1 {
            *b ^= v;
        }
    }
    basis.push(v);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

fn span(basis: &[u16]) -> Vec<u16> {
    (0u32..1 << basis.len())
        .map(|mask| {
            basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b)
        })
        .collect()
}

/// The lattice spanned by differences of exceptional classes, reduced mod 2,
/// and its quotient by the radical of the intersection form.
#[derive(Clone, Debug, Serialize)]
pub struct SymplecticQuotient {
    /// Echelon basis of the mod-2 difference lattice.
    pub span_basis: Vec<u16>,
    pub radical: Vec<u16>,
    /// Echelon basis of a complement to the radical.
    pub quotient_basis: Vec<u16>,
    /// The form on `quotient_basis`.
    pub gram: Vec<Vec<u8>>,
}

impl SymplecticQuotient {
    pub fn new(classes: &[PicVector]) -> Self {
        let mut span_basis = Vec::new();
        for a in classes {
            for b in classes {
                echelon_insert(&mut span_basis, mod2(&(a - b)));
            }
        }
        let elements = span(&span_basis);
        let radical_vectors: Vec<u16> = elements
            .iter()
            .copied()
            .filter(|&r| span_basis.iter().all(|&b| dot2(r, b) == 0))
            .collect();
        let mut radical = Vec::new();
        for &r in &radical_vectors {
            echelon_insert(&mut radical, r);
        }
        let mut quotient_basis = Vec::new();
        let mut all = radical.clone();
        for &b in &span_basis {
            if echelon_insert(&mut all, b) {
                quotient_basis.push(b);
            }
        }
        let gram = quotient_basis.iter().map(|&a| quotient_basis.iter().map(|&b| dot2(a, b)).collect()).collect();
        SymplecticQuotient { span_basis, radical, quotient_basis, gram }
    }

    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Coordinates in the quotient of a vector of the span, as a bitmask over
    /// `quotient_basis`.
    pub fn coords(&self, v: u16) -> u8 {
        let tagged = self
            .quotient_basis
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, 1u8 << i))
            .chain(self.radical.iter().map(|&r| (r, 0)));
        let mut pivots: Vec<(u16, u8, u32)> = Vec::new();
        let reduce = |pivots: &[(u16, u8, u32)], mut r: u16, mut t: u8| {
            for &(b, s, top) in pivots {
                if r >> top & 1 == 1 {
                    r ^= b;
                    t ^= s;
                }
            }
            (r, t)
        };
        for (b, s) in tagged {
            let (r, t) = reduce(&pivots, b, s);
            assert_ne!(r, 0, "dependent basis");
            pivots.push((r, t, 15 - r.leading_zeros()));
        }
        let (rest, t) = reduce(&pivots, v, 0);
        assert_eq!(rest, 0, "vector outside the span");
        t
    }

    /// The form on quotient coordinates.
    pub fn form(&self, a: u8, b: u8) -> u8 {
        let mut s = 0;
        for i in 0..self.dimension() {
            for j in 0..self.dimension() {
                if a >> i & 1 == 1 && b >> j & 1 == 1 {
                    s ^= self.gram[i][j];
                }
            }
        }
        s
    }

    /// Alternating and of full rank over F2.
    pub fn is_nondegenerate_alternating(&self) -> bool {
        let n = self.dimension();
        let alternating = (0..n).all(|i| self.gram[i][i] == 0 && (0..n).all(|j| self.gram[i][j] == self.gram[j][i]));
        let mut rows: Vec<u16> = Vec::new();
        for row in &self.gram {
            let v = row.iter().enumerate().fold(0u16, |acc, (j, &x)| acc | ((x as u16) << j));
            echelon_insert(&mut rows, v);
        }
        alternating && rows.len() == n
    }
}

/// Six pairs of bitangents with a common image under the difference map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinerHexad {
    pub value: u8,
    pub pairs: Vec<[usize; 2]>,
}

impl SteinerHexad {
    pub fn bitangents(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.pairs.iter().flatten().copied().collect();
        b.sort_unstable();
        b
    }
}

/// The degree-two configuration with all derived structures.
#[derive(Clone, Debug)]
pub struct Bitangents {
    pub classes: Vec<PicVector>,
    pub weyl: PermGroup,
    /// Blocks `{E, -K-E}` ordered by least member.
    pub blocks: Vec<[usize; 2]>,
    pub block_of: Vec<usize>,
    pub geiser: Perm,
    /// The action on the 28 blocks.
    pub quotient: PermGroup,
    pub symplectic: SymplecticQuotient,
    /// The image of each unordered pair of distinct blocks.
    pub pi: BTreeMap<[usize; 2], u8>,
    pub hexads: Vec<SteinerHexad>,
    /// The action on the 28 blocks followed by the 63 hexads (points 28..91).
    pub combined: PermGroup,
}

impl Bitangents {
    pub fn build() -> Self {
        let (classes, weyl) = weyl_group(2);
        let k = PicVector::canonical(7);
        let geiser_images: Vec<usize> = classes.iter().map(|e| index_of(&classes, &(&(-&k) - e))).collect();
        let geiser = Perm::from_images(geiser_images);
        let mut blocks = Vec::new();
        let mut block_of = vec![usize::MAX; classes.len()];
        for i in 0..classes.len() {
            if block_of[i] == usize::MAX {
                let j = geiser.apply(i);
                block_of[i] = blocks.len();
                block_of[j] = blocks.len();
                blocks.push([i, j]);
            }
        }
        let quotient_gens: Vec<Perm> = weyl.generators().iter().map(|g| induced_on_blocks(g, &blocks, &block_of)).collect();
        let quotient = PermGroup::new(blocks.len(), quotient_gens.clone());

        let symplectic = SymplecticQuotient::new(&classes);
        let mut pi = BTreeMap::new();
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let v = symplectic.coords(mod2(&(&classes[blocks[a][0]] - &classes[blocks[b][0]])));
                pi.insert([a, b], v);
            }
        }
        let mut by_value: BTreeMap<u8, Vec<[usize; 2]>> = BTreeMap::new();
        for (&pair, &v) in &pi {
            by_value.entry(v).or_default().push(pair);
        }
        let hexads: Vec<SteinerHexad> =
            by_value.into_iter().map(|(value, pairs)| SteinerHexad { value, pairs }).collect();

        let combined_gens = quotient_gens.iter().map(|g| extend_to_hexads(g, &pi, &hexads)).collect();
        let combined = PermGroup::new(blocks.len() + hexads.len(), combined_gens);
        Bitangents { classes, weyl, blocks, block_of, geiser, quotient, symplectic, pi, hexads, combined }
    }

    pub fn canonical(&self) -> PicVector {
        PicVector::canonical(7)
    }

    /// The image of two distinct blocks.
    pub fn pi_of(&self, a: usize, b: usize) -> u8 {
        self.pi[&[a.min(b), a.max(b)]]
    }

    pub fn hexad_index(&self, value: u8) -> usize {
        self.hexads.iter().position(|h| h.value == value).expect("nonzero value")
    }

    /// Every representative of each block pair gives the same value.
    pub fn pi_is_well_defined(&self) -> bool {
        self.pi.iter().all(|(&[a, b], &v)| {
            self.blocks[a].iter().all(|&e| {
                self.blocks[b]
                    .iter()
                    .all(|&f| self.symplectic.coords(mod2(&(&self.classes[e] - &self.classes[f]))) == v)
            })
        })
    }

    /// The Geiser involution is central in the Weyl group, acts trivially on
    /// blocks, and the block action has index two.
    pub fn kernel_is_geiser(&self) -> bool {
        let central = self.weyl.generators().iter().all(|g| g.then(&self.geiser) == self.geiser.then(g));
        let trivial = self.blocks.iter().all(|b| self.geiser.apply(b[0]) == b[1]);
        self.weyl.contains(&self.geiser)
            && !self.geiser.is_identity()
            && central
            && trivial
            && self.weyl.order() == 2 * self.quotient.order()
    }

    /// The map induced on the 63 values by each generator of the block
    /// action is linear and preserves the form.
    pub fn generators_preserve_form(&self) -> bool {
        self.quotient.generators().iter().all(|g| {
            let image: BTreeMap<u8, u8> = self
                .hexads
                .iter()
                .map(|h| {
                    let [a, b] = h.pairs[0];
                    (h.value, self.pi_of(g.apply(a), g.apply(b)))
                })
                .collect();
            let img = |v: u8| if v == 0 { 0 } else { image[&v] };
            (1u8..64).all(|u| {
                (1u8..64).all(|v| {
                    self.symplectic.form(img(u), img(v)) == self.symplectic.form(u, v) && img(u ^ v) == img(u) ^ img(v)
                })
            })
        })
    }

    /// Each generator of the block action maps each hexad onto a hexad.
    pub fn generators_permute_hexads(&self) -> bool {
        self.quotient.generators().iter().all(|g| {
            self.hexads.iter().all(|h| {
                let [a, b] = h.pairs[0];
                let target = self.pi_of(g.apply(a), g.apply(b));
                h.pairs.iter().all(|&[a, b]| self.pi_of(g.apply(a), g.apply(b)) == target)
            })
        })
    }

    /// Points of the combined action that are hexads.
    pub fn hexad_points(&self) -> Vec<usize> {
        (self.blocks.len()..self.blocks.len() + self.hexads.len()).collect()
    }

    pub fn block_points(&self) -> Vec<usize> {
        (0..self.blocks.len()).collect()
    }

    /// The stabilizer of hexad `h` in the combined action.
    pub fn hexad_stabilizer(&self, h: usize) -> PermGroup {
        self.combined.stabilizer(self.blocks.len() + h, 0)
    }

    /// The common value of six pairs of classes, when their blocks are twelve
    /// distinct bitangents forming one hexad.
    pub fn fibre_of(&self, pairs: &[[PicVector; 2]]) -> Option<u8> {
        let blocks: Vec<[usize; 2]> = pairs
            .iter()
            .map(|[e, f]| [self.block_of[index_of(&self.classes, e)], self.block_of[index_of(&self.classes, f)]])
            .collect();
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        if pairs.len() != 6 || all.len() != 12 {
            return None;
        }
        let values: Vec<u8> = blocks.iter().map(|&[a, b]| self.pi_of(a, b)).collect();
        values.iter().all(|&v| v == values[0]).then_some(values[0])
    }

    /// Pushes a permutation of the 56 classes preserving the Geiser pairs to
    /// the combined action.
    pub fn push(&self, g: &Perm) -> Perm {
        let on_blocks = induced_on_blocks(g, &self.blocks, &self.block_of);
        extend_to_hexads(&on_blocks, &self.pi, &self.hexads)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct U63Report {
    pub order: u128,
    pub index: u128,
    pub orbit_type: Vec<usize>,
    /// The orbit of size twelve is the union of the hexad's bitangents.
    pub twelve_orbit_is_hexad: bool,
    pub restriction_order: u128,
    /// Generators on the twelve bitangents preserve the six pairs and are even.
    pub restriction_in_even_wreath: bool,
    /// `|(S2 wr S6) & A12|`, computed from generators.
    pub even_wreath_order: u128,
    pub bitangent_stabilizer_index: u128,
}

impl Bitangents {
    /// The stabilizer of the first hexad acting on the bitangents.
    pub fn u63_structure(&self) -> U63Report {
        let stab = self.hexad_stabilizer(0).restrict(&self.block_points()).expect("blocks are invariant");
        let hexad = &self.hexads[0];
        let twelve = hexad.bitangents();
        let orbit_type = stab.orbit_type_on(&self.block_points());
        let on_twelve = stab.restrict(&twelve).expect("hexad bitangents are invariant");
        let local = |b: usize| twelve.iter().position(|&x| x == b).unwrap();
        let local_pairs: Vec<[usize; 2]> = hexad.pairs.iter().map(|&[a, b]| [local(a), local(b)]).collect();
        let in_wreath = on_twelve.generators().iter().all(|g| {
            g.is_even()
                && local_pairs.iter().all(|&[a, b]| {
                    let img = [g.apply(a).min(g.apply(b)), g.apply(a).max(g.apply(b))];
                    local_pairs.contains(&img)
                })
        });
        U63Report {
            order: stab.order(),
            index: self.quotient.order() / stab.order(),
            orbit_type,
            twelve_orbit_is_hexad: stab.orbit(twelve[0]) == twelve,
            restriction_order: on_twelve.order(),
            restriction_in_even_wreath: in_wreath,
            even_wreath_order: even_wreath(6).order(),
            bitangent_stabilizer_index: self.quotient.order() / self.quotient.stabilizer(0, 0).order(),
        }
    }

    /// The sum of all exceptional classes.
    pub fn class_sum(&self) -> PicVector {
        self.classes.iter().fold(PicVector::new(0, vec![0; 7]), |acc, c| &acc + c)
    }
}

/// Even permutations of `2k` points preserving the pairs `{2i, 2i+1}`.
pub fn even_wreath(k: usize) -> PermGroup {
    let n = 2 * k;
    let shift = Perm::from_images((0..n).map(|i| (i + 2) % n).collect());
    let gens = vec![
        Perm::from_cycles(n, &[&[0, 1], &[2, 3]]),
        Perm::from_cycles(n, &[&[0, 2], &[1, 3]]),
        shift,
    ];
    debug_assert!(gens.iter().all(Perm::is_even));
    PermGroup::new(n, gens)
}

fn induced_on_blocks(g: &Perm, blocks: &[[usize; 2]], block_of: &[usize]) -> Perm {
    let images = blocks
        .iter()
        .map(|b| {
            let image = [block_of[g.apply(b[0])], block_of[g.apply(b[1])]];
            assert_eq!(image[0], image[1], "permutation does not preserve the blocks");
            image[0]
        })
        .collect();
    Perm::from_images(images)
}

fn extend_to_hexads(g: &Perm, pi: &BTreeMap<[usize; 2], u8>, hexads: &[SteinerHexad]) -> Perm {
    let n = g.degree();
    let value = |a: usize, b: usize| pi[&[a.min(b), a.max(b)]];
    let mut images = g.images();
    for h in hexads {
        let [a, b] = h.pairs[0];
        let target = value(g.apply(a), g.apply(b));
        assert!(
            h.pairs.iter().all(|&[a, b]| value(g.apply(a), g.apply(b)) == target),
            "hexad not mapped to a hexad"
        );
        images.push(n + hexads.iter().position(|x| x.value == target).unwrap());
    }
    Perm::from_images(images)
}

/// Whether the six pairs satisfy: the first classes are mutually skew, the
/// second classes are mutually skew, and `first_i . second_j = delta_ij`.
pub fn hexad_criterion(pairs: &[[PicVector; 2]]) -> bool {
    if pairs.len() != 6 || pairs.iter().flatten().any(|c| c.rank() != 7 || !c.is_exceptional()) {
        return false;
    }
    (0..6).all(|i| {
        (0..6).all(|j| {
            let skew = i == j || (pairs[i][0].dot(&pairs[j][0]) == 0 && pairs[i][1].dot(&pairs[j][1]) == 0);
            let delta = pairs[i][0].dot(&pairs[j][1]) == (i == j) as i64;
            skew && delta
        })
    })
}

/// The pairs `(e_i, l - e_i - e_7)` for `i = 1..6`.
pub fn standard_hexad() -> Vec<[PicVector; 2]> {
    (0..6)
        .map(|i| {
            let e = PicVector::exceptional(7, i);
            let mut m = vec![0; 7];
            m[i] = -1;
            m[6] = -1;
            [e, PicVector::new(1, m)]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank8 {
    pub rank: usize,
    pub index: u128,
}

/// Rank of the Gram matrix of the twelve classes and `K`, and the index of
/// the lattice they generate.
pub fn rank8_check(pairs: &[[PicVector; 2]]) -> Rank8 {
    let mut vs: Vec<PicVector> = pairs.iter().flatten().cloned().collect();
    vs.push(PicVector::canonical(7));
    let rank = integer_rank(&gram(&vs));
    let coords: Vec<Vec<i64>> = vs.iter().map(|v| v.coords()).collect();
    Rank8 { rank, index: lattice_index(&coords) }
}

/// Rank over Q by fraction-free elimination.
pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// Index in `Z^n` of the lattice spanned by the rows, or 0 if they do not
/// have full rank.
pub fn lattice_index(rows: &[Vec<i64>]) -> u128 {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let n = a.first().map_or(0, |r| r.len());
    let mut det = 1u128;
    let mut top = 0;
    for c in 0..n {
        // Euclid on column c among the remaining rows.
        loop {
            let mut nz: Vec<usize> = (top..a.len()).filter(|&r| a[r][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&r| a[r][c].abs());
            let p = nz[0];
            for &r in &nz[1..] {
                let q = a[r][c] / a[p][c];
                for k in 0..n {
                    a[r][k] -= q * a[p][k];
                }
            }
        }
        let Some(p) = (top..a.len()).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        a.swap(top, p);
        det *= a[top][c].unsigned_abs();
        top += 1;
    }
    det
}
