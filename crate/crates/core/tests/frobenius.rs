use std::collections::BTreeSet;

use hexforge_core::field::Rationals;
use hexforge_core::frobenius::{consistency, cycle_type, extension_candidates, sample, GroupModel, Perm};
use hexforge_core::kummer::{KummerPlan, OrbitSpec};
use hexforge_core::poly::UniPoly;

fn first_example() -> UniPoly<Rationals> {
    UniPoly::from_i64s(Rationals, &[25, -150, 335, -340, 152, -24, 1])
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A permutation of {0,1,2,3} acting on the six 2-subsets.
fn on_two_sets(p: [usize; 4]) -> Perm {
    PAIRS
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
            PAIRS.iter().position(|&q| q == (x, y)).unwrap()
        })
        .collect()
}

fn a4_on_two_sets() -> Vec<Perm> {
    vec![on_two_sets([1, 2, 0, 3]), on_two_sets([1, 0, 3, 2])]
}

/// Cycle types of all 12 elements of A4 on 2-sets, by brute force over S4.
fn a4_two_set_types() -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if BTreeSet::from(p).len() != 4 {
                        continue;
                    }
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.insert(cycle_type(&on_two_sets(p)));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn first_example_sextic_types_come_from_a4() {
    let s = sample(&first_example(), 1000);
    let allowed = a4_two_set_types();
    assert_eq!(allowed.len(), 3);
    for x in &s.samples {
        assert!(allowed.contains(&x.sextic), "p = {}: {:?}", x.p, x.sextic);
        assert!(x.pair_refinement_holds());
    }
}

#[test]
fn first_example_has_an_order_48_candidate() {
    let s = sample(&first_example(), 1000);
    // Indicators of the three partitions of {0,1,2,3} into two pairs.
    let u = [[0usize, 5], [1, 4], [2, 3]];
    let vec_of = |idx: &[usize]| -> [bool; 6] { std::array::from_fn(|i| idx.contains(&i)) };
    let kernel = [
        vec_of(&[u[0][0], u[0][1], u[1][0], u[1][1]]),
        vec_of(&[u[1][0], u[1][1], u[2][0], u[2][1]]),
    ];
    let candidates = extension_candidates(&a4_on_two_sets(), &kernel, 12).unwrap();
    assert!(!candidates.is_empty());
    assert!(candidates.iter().all(|g| g.order == 48 && g.even));
    let consistent: Vec<_> = candidates
        .iter()
        .map(|g| consistency(&s, g))
        .filter(|r| r.consistent)
        .collect();
    assert!(!consistent.is_empty());
    assert!(consistent.iter().all(|r| r.coverage > 0.0 && r.coverage <= 1.0));
}

#[test]
fn first_example_is_consistent_with_its_plan_bound() {
    let f = first_example();
    let x = UniPoly::from_i64s(Rationals, &[0, 1]);
    let one = UniPoly::one(Rationals);
    let plan = KummerPlan::new(vec![OrbitSpec::Field { m: f.clone(), a: x, t: one }], None).unwrap();
    let bound = GroupModel::intended(&plan, &[]).unwrap();
    assert_eq!(bound.order, 23040);
    let s = sample(&f, 1000);
    assert!(consistency(&s, &bound).consistent);
    let a4 = a4_on_two_sets();
    let tight = GroupModel::intended(&plan, &[Some(a4)]).unwrap();
    assert_eq!(tight.order, 12 * 32);
    assert!(consistency(&s, &tight).consistent);
}
