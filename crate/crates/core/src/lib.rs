//! Exact arithmetic and the conic-bundle construction of plane quartics with
//! a rational Steiner hexad of bitangents.

pub mod construct;
pub mod error;
pub mod factor;
pub mod field;
pub mod frobenius;
pub mod hexlines;
pub mod json;
pub mod kummer;
pub mod poly;

pub use error::{Error, Result};
