//! Double-sixes on the cubic surface and the embedding of its Weyl group into
//! the degree-two one by blowing up a further point.

use serde::Serialize;

use crate::bitangents::{weyl_group, Bitangents};
use crate::lattice::{index_of, reflection_perm, simple_roots, PicVector};
use crate::perm::{Perm, PermGroup};

/// Two sixes of mutually skew lines, `a[i]` meeting `b[j]` exactly when `i != j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DoubleSix {
    pub a: [usize; 6],
    pub b: [usize; 6],
}

impl DoubleSix {
    pub fn lines(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.a.iter().chain(&self.b).copied().collect();
        v.sort_unstable();
        v
    }

    /// The unordered pair of sorted sixes, used as a key.
    fn key(&self) -> [[usize; 6]; 2] {
        let mut a = self.a;
        let mut b = self.b;
        a.sort_unstable();
        b.sort_unstable();
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }
}

fn sixes(lines: &[PicVector]) -> Vec<[usize; 6]> {
    let n = lines.len();
    let skew = |i: usize, j: usize| lines[i].dot(&lines[j]) == 0;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn extend(
        start: usize,
        n: usize,
        stack: &mut Vec<usize>,
        skew: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<[usize; 6]>,
    ) {
        if stack.len() == 6 {
            out.push(stack.clone().try_into().unwrap());
            return;
        }
        for c in start..n {
            if stack.iter().all(|&s| skew(s, c)) {
                stack.push(c);
                extend(c + 1, n, stack, skew, out);
                stack.pop();
            }
        }
    }
    extend(0, n, &mut stack, &skew, &mut out);
    out
}

/// All double-sixes among the 27 lines, sorted.
pub fn double_sixes(lines: &[PicVector]) -> Vec<DoubleSix> {
    let meets = |i: usize, j: usize| lines[i].dot(&lines[j]) == 1;
    let mut found: Vec<[[usize; 6]; 2]> = Vec::new();
    for a in sixes(lines) {
        let partner: Option<Vec<usize>> = (0..6)
            .map(|i| {
                let hits: Vec<usize> = (0..lines.len())
                    .filter(|&c| !a.contains(&c))
                    .filter(|&c| (0..6).all(|j| meets(a[j], c) == (i != j)))
                    .collect();
                (hits.len() == 1).then(|| hits[0])
            })
            .collect();
        let Some(b) = partner else { continue };
        let b: [usize; 6] = b.try_into().unwrap();
        let skew_b = (0..6).all(|i| (i + 1..6).all(|j| lines[b[i]].dot(&lines[b[j]]) == 0));
        if skew_b {
            found.push(DoubleSix { a, b }.key());
        }
    }
    found.sort();
    found.dedup();
    found.into_iter().map(|[a, b]| DoubleSix { a, b }).collect()
}

fn double_six_image(g: &Perm, ds: &DoubleSix) -> [[usize; 6]; 2] {
    DoubleSix { a: ds.a.map(|i| g.apply(i)), b: ds.b.map(|i| g.apply(i)) }.key()
}

/// Appends the action on double-sixes to a permutation of the 27 lines.
fn extend_to_double_sixes(g: &Perm, all: &[DoubleSix]) -> Perm {
    let keys: Vec<[[usize; 6]; 2]> = all.iter().map(DoubleSix::key).collect();
    let mut images = g.images();
    let n = images.len();
    for ds in all {
        let k = double_six_image(g, ds);
        images.push(n + keys.iter().position(|x| *x == k).expect("double-sixes map to double-sixes"));
    }
    Perm::from_images(images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Containment {
    /// Hexads fixed by every generator of the pushed-forward group.
    pub fixed_hexads: Vec<usize>,
    /// The pushed-forward generators lie in the stabilizer of the first fixed hexad.
    pub in_hexad_stabilizer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E6Report {
    pub weyl_order: u128,
    pub double_sixes: usize,
    pub double_six_stabilizer_order: u128,
    pub double_six_stabilizer_index: u128,
    pub double_six_orbit_type: Vec<usize>,
    /// The orbit of size twelve is the stabilized double-six.
    pub twelve_orbit_is_double_six: bool,
    pub line_stabilizer_index: u128,
    pub line_orbit_type: Vec<usize>,
    /// The embedded group agrees with the cubic-surface action on the classes
    /// not involving the last point.
    pub embedding_compatible: bool,
    pub embedded_double_six_index: u128,
    pub embedded_double_six_orbit_type: Vec<usize>,
    pub embedded_line_orbit_type: Vec<usize>,
    pub double_six_containment: Containment,
    pub line_containment: Containment,
}

fn containment(bt: &Bitangents, gens: &[Perm]) -> Containment {
    let pushed: Vec<Perm> = gens.iter().map(|g| bt.push(g)).collect();
    let n = bt.blocks.len();
    let fixed_hexads: Vec<usize> =
        (0..bt.hexads.len()).filter(|&h| pushed.iter().all(|g| g.apply(n + h) == n + h)).collect();
    let in_hexad_stabilizer = match fixed_hexads.first() {
        Some(&h) => {
            let stab = bt.hexad_stabilizer(h);
            pushed.iter().all(|g| stab.contains(g))
        }
        None => false,
    };
    Containment { fixed_hexads, in_hexad_stabilizer }
}

/// Runs the cubic-surface computations and their images in degree two.
pub fn e6_applications(bt: &Bitangents) -> E6Report {
    let (lines, weyl) = weyl_group(3);
    let all = double_sixes(&lines);
    let n27 = lines.len();
    let combined_gens: Vec<Perm> = weyl.generators().iter().map(|g| extend_to_double_sixes(g, &all)).collect();
    let combined = PermGroup::new(n27 + all.len(), combined_gens.clone());
    let line_points: Vec<usize> = (0..n27).collect();

    let ds_stab = combined.stabilizer(n27, 0).restrict(&line_points).expect("lines are invariant");
    let ds_orbits = ds_stab.orbits();
    let twelve_orbit_is_double_six = ds_orbits.iter().any(|o| *o == all[0].lines());
    let line_stab = weyl.stabilizer(0, 0);

    // The cubic-surface roots with a zero in the last coordinate act on the
    // 56 classes; lines correspond to classes with no last-point component.
    let classes = &bt.classes;
    let pad = |v: &PicVector| {
        let mut m = v.m.clone();
        m.push(0);
        PicVector::new(v.d, m)
    };
    let embedded_gens: Vec<Perm> = simple_roots(6).iter().map(|a| reflection_perm(classes, &pad(a))).collect();
    let line_slots: Vec<usize> = lines.iter().map(|l| index_of(classes, &pad(l))).collect();
    let embedding_compatible = weyl
        .generators()
        .iter()
        .zip(&embedded_gens)
        .all(|(g, h)| (0..n27).all(|i| h.apply(line_slots[i]) == line_slots[g.apply(i)]));

    // The embedded group on the 56 classes followed by the 36 double-sixes.
    let n56 = classes.len();
    let joint_gens: Vec<Perm> = embedded_gens
        .iter()
        .zip(&combined_gens)
        .map(|(h, g)| {
            let mut images = h.images();
            images.extend((n27..n27 + all.len()).map(|p| g.apply(p) - n27 + n56));
            Perm::from_images(images)
        })
        .collect();
    let joint = PermGroup::new(n56 + all.len(), joint_gens);
    let class_points: Vec<usize> = (0..n56).collect();
    let embedded_ds = joint.stabilizer(n56, 0).restrict(&class_points).expect("classes are invariant");
    let embedded = PermGroup::new(n56, embedded_gens);
    let embedded_line = embedded.stabilizer(line_slots[0], 0);

    E6Report {
        weyl_order: weyl.order(),
        double_sixes: all.len(),
        double_six_stabilizer_order: ds_stab.order(),
        double_six_stabilizer_index: weyl.order() / ds_stab.order(),
        double_six_orbit_type: ds_stab.orbit_type_on(&line_points),
        twelve_orbit_is_double_six,
        line_stabilizer_index: weyl.order() / line_stab.order(),
        line_orbit_type: line_stab.orbit_type_on(&line_points),
        embedding_compatible,
        embedded_double_six_index: bt.weyl.order() / embedded_ds.order(),
        embedded_double_six_orbit_type: embedded_ds.orbit_type_on(&class_points),
        embedded_line_orbit_type: embedded_line.orbit_type_on(&class_points),
        double_six_containment: containment(bt, embedded_ds.generators()),
        line_containment: containment(bt, embedded_line.generators()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::exceptional_classes;

    #[test]
    fn thirty_six_double_sixes() {
        let lines = exceptional_classes(3);
        let all = double_sixes(&lines);
        assert_eq!(all.len(), 36);
        assert!(all.iter().all(|d| d.lines().len() == 12));
    }

    #[test]
    fn cubic_surface_and_embedding() {
        let bt = Bitangents::build();
        let r = e6_applications(&bt);
        assert_eq!(r.weyl_order, 51_840);
        assert_eq!(r.double_six_stabilizer_index, 36);
        assert_eq!(r.double_six_orbit_type, vec![12, 15]);
        assert!(r.twelve_orbit_is_double_six);
        assert_eq!(r.line_stabilizer_index, 27);
        assert_eq!(r.line_orbit_type, vec![1, 10, 16]);
        assert!(r.embedding_compatible);
        assert_eq!(r.embedded_double_six_index, 2016);
        assert_eq!(r.embedded_double_six_orbit_type, vec![1, 1, 12, 12, 15, 15]);
        assert_eq!(r.embedded_line_orbit_type, vec![1, 1, 1, 1, 10, 10, 16, 16]);
        assert!(!r.double_six_containment.fixed_hexads.is_empty());
        assert!(r.double_six_containment.in_hexad_stabilizer);
        assert!(!r.line_containment.fixed_hexads.is_empty());
        assert!(r.line_containment.in_hexad_stabilizer);
    }
}
