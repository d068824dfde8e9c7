//! Exceptional classes on del Pezzo surfaces of degrees two and three, their
//! Weyl groups as permutation groups, and Steiner hexads of bitangents.

pub mod bitangents;
pub mod e6;
pub mod lattice;
pub mod perm;

pub use bitangents::{
    hexad_criterion, rank8_check, standard_hexad, weyl_group, Bitangents, Rank8, SteinerHexad, SymplecticQuotient, U63Report,
};
pub use e6::{double_sixes, e6_applications, DoubleSix, E6Report};
pub use lattice::{exceptional_classes, PicVector};
pub use perm::{Perm, PermGroup};
pub mod report;
pub use report::{groups_report, GroupsReport};
