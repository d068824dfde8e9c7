//! Polynomial algebra: dense univariate polynomials, binary and ternary
//! homogeneous forms, resultants and related eliminations.

mod binary;
mod resultant;
mod ternary;
mod uni;

pub use binary::{binary_square_root, BinaryForm};
pub use resultant::{det_poly_matrix, discriminant, resultant, resultant_over_poly_ring};
pub use ternary::{LinearForm, Monomial, TernaryForm};
pub use uni::UniPoly;
