use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{orthogonal_lattice, IntVector, Lattice};

/// Exact description of a semigroup `S ⊆ ℤⁿ` containing 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupSpec {
    /// The semigroup generated by a finite list (empty list: `S = {0}`).
    Generators {
        ambient_rank: usize,
        generators: Vec<IntVector>,
    },
    /// `S = {x : ⟨v, x⟩ > 0} ∪ embed(inner)`, where `inner` lives on the
    /// Hermite basis of `v^⊥ ∩ ℤⁿ` (see [`SemigroupSpec::boundary_basis`]).
    Tower {
        ambient_rank: usize,
        normal: IntVector,
        inner: Box<SemigroupSpec>,
    },
}

impl SemigroupSpec {
    pub fn generators(ambient_rank: usize, generators: Vec<IntVector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        Ok(SemigroupSpec::Generators { ambient_rank, generators })
    }

    pub fn from_i64s(ambient_rank: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::generators(
            ambient_rank,
            generators.iter().map(|g| IntVector::from_i64s(g)).collect(),
        )
    }

    pub fn tower(ambient_rank: usize, normal: IntVector, inner: SemigroupSpec) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::InvalidSpec("a tower needs ambient rank at least 1".into()));
        }
        if normal.len() != ambient_rank {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: normal.len() });
        }
        if normal.is_zero() || !normal.content().is_one() {
            return Err(Error::InvalidSpec(format!("tower normal {normal} must be primitive and nonzero")));
        }
        if inner.ambient_rank() + 1 != ambient_rank {
            return Err(Error::InvalidSpec(format!(
                "tower inner rank {} must be {}",
                inner.ambient_rank(),
                ambient_rank - 1
            )));
        }
        Ok(SemigroupSpec::Tower { ambient_rank, normal, inner: Box::new(inner) })
    }

    pub fn ambient_rank(&self) -> usize {
        match self {
            SemigroupSpec::Generators { ambient_rank, .. } | SemigroupSpec::Tower { ambient_rank, .. } => {
                *ambient_rank
            }
        }
    }

    /// The Hermite basis of `v^⊥ ∩ ℤⁿ` on which a tower's inner semigroup
    /// is written.
    pub fn boundary_basis(normal: &IntVector) -> Lattice {
        orthogonal_lattice(normal.len(), std::slice::from_ref(normal))
    }

    /// Maps inner coordinates to ambient coordinates for a tower.
    pub fn embed(normal: &IntVector, inner_point: &IntVector) -> IntVector {
        let basis = Self::boundary_basis(normal);
        basis.combine(inner_point)
    }

    /// Generators case only.
    pub fn generator_list(&self) -> Option<&[IntVector]> {
        match self {
            SemigroupSpec::Generators { generators, .. } => Some(generators),
            SemigroupSpec::Tower { .. } => None,
        }
    }

    pub(crate) fn nonzero_generators(gens: &[IntVector]) -> Vec<IntVector> {
        let mut out: Vec<IntVector> = gens.iter().filter(|g| !g.iter().all(Zero::is_zero)).cloned().collect();
        out.sort();
        out.dedup();
        out
    }
}
