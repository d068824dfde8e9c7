//! Aggregate counts for machine comparison.

use serde::Serialize;

use crate::bitangents::{rank8_check, standard_hexad, weyl_group, Bitangents, Rank8, U63Report};
use crate::e6::{e6_applications, E6Report};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeThreeReport {
    pub exceptional_classes: usize,
    pub weyl_order: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeTwoReport {
    pub exceptional_classes: usize,
    pub weyl_order: u128,
    pub blocks: usize,
    pub block_action_order: u128,
    pub block_action_transitive: bool,
    pub kernel_is_geiser: bool,
    pub span_dimension: usize,
    pub radical_is_canonical: bool,
    pub quotient_dimension: usize,
    pub form_nondegenerate_alternating: bool,
    pub block_pairs: usize,
    pub hexads: usize,
    pub hexad_sizes: Vec<usize>,
    pub pi_well_defined: bool,
    pub generators_permute_hexads: bool,
    pub generators_preserve_form: bool,
    pub hexad_action_transitive: bool,
    pub u63: U63Report,
    pub rank8: Rank8,
    pub class_sum_is_minus_28k: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupsReport {
    pub degree3: DegreeThreeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree2: Option<DegreeTwoReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e6: Option<E6Report>,
}

pub fn degree_two_report(bt: &Bitangents) -> DegreeTwoReport {
    let mut sizes: Vec<usize> = bt.hexads.iter().map(|h| h.pairs.len()).collect();
    sizes.dedup();
    let k = bt.canonical();
    DegreeTwoReport {
        exceptional_classes: bt.classes.len(),
        weyl_order: bt.weyl.order(),
        blocks: bt.blocks.len(),
        block_action_order: bt.quotient.order(),
        block_action_transitive: bt.quotient.is_transitive_on(&bt.block_points()),
        kernel_is_geiser: bt.kernel_is_geiser(),
        span_dimension: bt.symplectic.span_basis.len(),
        radical_is_canonical: bt.symplectic.radical == vec![crate::bitangents::mod2(&k)],
        quotient_dimension: bt.symplectic.dimension(),
        form_nondegenerate_alternating: bt.symplectic.is_nondegenerate_alternating(),
        block_pairs: bt.pi.len(),
        hexads: bt.hexads.len(),
        hexad_sizes: sizes,
        pi_well_defined: bt.pi_is_well_defined(),
        generators_permute_hexads: bt.generators_permute_hexads(),
        generators_preserve_form: bt.generators_preserve_form(),
        hexad_action_transitive: bt.combined.is_transitive_on(&bt.hexad_points()),
        u63: bt.u63_structure(),
        rank8: rank8_check(&standard_hexad()),
        class_sum_is_minus_28k: bt.class_sum() == k.scale(-28),
    }
}

/// Degree 3 reports the cubic-surface counts only; degree 2 reports everything.
pub fn groups_report(degree: u32) -> GroupsReport {
    let (lines, weyl) = weyl_group(3);
    let degree3 = DegreeThreeReport { exceptional_classes: lines.len(), weyl_order: weyl.order() };
    if degree == 3 {
        return GroupsReport { degree3, degree2: None, e6: None };
    }
    let bt = Bitangents::build();
    GroupsReport { degree3, degree2: Some(degree_two_report(&bt)), e6: Some(e6_applications(&bt)) }
}
