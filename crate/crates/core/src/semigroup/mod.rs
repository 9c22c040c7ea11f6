//! Semigroups in ℤⁿ, their faces, lattice groups, dual cones and hulls.

mod atlas;
mod piece;
mod spec;

pub use atlas::{asymptotic_cone, enumerate_faces, FaceData, SdataReport, SdataViolation, SpectrumAtlas};
pub use piece::SearchConfig;
pub use spec::SemigroupSpec;

use crate::error::Result;
use crate::linalg::IntVector;

/// Membership `x ∈ S` with the default search budget.
pub fn contains(spec: &SemigroupSpec, x: &IntVector) -> Result<bool> {
    piece::Piece::from_spec(spec)?.contains(x, &SearchConfig::default())
}

/// `S ∩ (−S) = {0}`.
pub fn is_antisymmetric(spec: &SemigroupSpec) -> Result<bool> {
    piece::Piece::from_spec(spec)?.is_antisymmetric(&SearchConfig::default())
}

/// The group generated by `S` is all of ℤⁿ.
pub fn is_separating(spec: &SemigroupSpec) -> Result<bool> {
    Ok(piece::Piece::from_spec(spec)?.lattice.is_full())
}
