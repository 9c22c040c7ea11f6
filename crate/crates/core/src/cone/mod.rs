//! Rational polyhedral cones in double description.
//!
//! A [`Cone`] always carries both representations in canonical form:
//!
//! * lineality `C ∩ (−C)` and equations `span(C)^⊥` as saturated Hermite
//!   lattices;
//! * extreme rays projected orthogonally onto the complement of the
//!   lineality space, made primitive and sorted;
//! * facet normals projected onto `span(C)`, made primitive and sorted.
//!
//! With this normalization the dual cone is obtained by swapping the two
//! sides, and structural equality of `Cone` values is equality of cones.

mod dd;
mod faces;

pub use dd::extreme_generators;
pub use faces::{FaceHandle, FaceLattice};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{project_out, rank, saturated_span, IntVector, Lattice, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVector>,
    inequalities: Vec<IntVector>,
    equations: Lattice,
    lineality: Lattice,
}

/// Input accepted by [`dd_convert`].
#[derive(Clone, Debug)]
pub enum ConeInput {
    /// Generators; the cone is their nonnegative hull.
    Rays(Vec<IntVector>),
    /// Normals `a` of inequalities `⟨a, x⟩ ≥ 0`.
    Inequalities(Vec<IntVector>),
}

fn check_lengths(n: usize, vs: &[IntVector]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch { expected: n, found: v.len() }),
        None => Ok(()),
    }
}

fn with_negatives(vs: &[IntVector]) -> Vec<IntVector> {
    vs.iter().flat_map(|v| [v.clone(), -v]).collect()
}

fn canonical_directions(vs: &[IntVector], modulo: &Lattice) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = vs
        .iter()
        .map(|v| project_out(v, modulo.basis()).clear_denominators())
        .filter(|v| !v.is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn dd_convert(n: usize, input: ConeInput) -> Result<Cone> {
    match input {
        ConeInput::Rays(rays) => Cone::from_generators(n, &rays),
        ConeInput::Inequalities(ineqs) => Cone::from_constraints(n, &ineqs, &[]),
    }
}

impl Cone {
    /// Nonnegative hull of `generators`.
    pub fn from_generators(n: usize, generators: &[IntVector]) -> Result<Cone> {
        check_lengths(n, generators)?;
        let (facets, eq_gens) = extreme_generators(n, generators);
        let mut constraints = facets.clone();
        constraints.extend(with_negatives(&eq_gens));
        let (rays, lin_gens) = extreme_generators(n, &constraints);
        Ok(Self::canonical(n, &rays, &lin_gens, &facets, &eq_gens))
    }

    /// `{x : ⟨a, x⟩ ≥ 0 for a in inequalities, ⟨e, x⟩ = 0 for e in equations}`.
    pub fn from_constraints(
        n: usize,
        inequalities: &[IntVector],
        equations: &[IntVector],
    ) -> Result<Cone> {
        check_lengths(n, inequalities)?;
        check_lengths(n, equations)?;
        let mut constraints = inequalities.to_vec();
        constraints.extend(with_negatives(equations));
        let (rays, lin) = extreme_generators(n, &constraints);
        let mut gens = rays;
        gens.extend(with_negatives(&lin));
        Self::from_generators(n, &gens)
    }

    fn canonical(
        n: usize,
        rays: &[IntVector],
        lin_gens: &[IntVector],
        facets: &[IntVector],
        eq_gens: &[IntVector],
    ) -> Cone {
        let lineality = saturated_span(n, lin_gens);
        let equations = saturated_span(n, eq_gens);
        Cone {
            ambient_rank: n,
            rays: canonical_directions(rays, &lineality),
            inequalities: canonical_directions(facets, &equations),
            equations,
            lineality,
        }
    }

    pub fn zero(n: usize) -> Cone {
        Cone {
            ambient_rank: n,
            rays: Vec::new(),
            inequalities: Vec::new(),
            equations: Lattice::full(n),
            lineality: Lattice::zero(n),
        }
    }

    pub fn full(n: usize) -> Cone {
        Cone {
            ambient_rank: n,
            rays: Vec::new(),
            inequalities: Vec::new(),
            equations: Lattice::zero(n),
            lineality: Lattice::full(n),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Facet normals `a` with `⟨a, x⟩ ≥ 0` on the cone.
    pub fn inequalities(&self) -> &[IntVector] {
        &self.inequalities
    }

    /// Basis of `span(C)^⊥`.
    pub fn equations(&self) -> &Lattice {
        &self.equations
    }

    pub fn lineality(&self) -> &Lattice {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.rank()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.rank() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// All generators: rays together with ± each lineality basis vector.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        g.extend(with_negatives(self.lineality.basis()));
        g
    }

    /// The dual cone `{y : ⟨x, y⟩ ≥ 0 for all x ∈ C}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.inequalities.clone(),
            inequalities: self.rays.clone(),
            equations: self.lineality.clone(),
            lineality: self.equations.clone(),
        }
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.len() == self.ambient_rank
            && self.equations.basis().iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|a| !a.dot(x).is_negative())
    }

    pub fn contains_rational(&self, x: &RationalVector) -> bool {
        x.len() == self.ambient_rank
            && self.equations.basis().iter().all(|e| x.dot_int(e).is_zero())
            && self.inequalities.iter().all(|a| !x.dot_int(a).is_negative())
    }

    /// Membership in the relative interior: every facet strictly positive.
    pub fn relative_interior_contains(&self, x: &IntVector) -> bool {
        x.len() == self.ambient_rank
            && self.equations.basis().iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|a| a.dot(x).is_positive())
    }

    /// `self ⊆ other`.
    pub fn is_subcone_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self
                .lineality
                .basis()
                .iter()
                .all(|l| other.contains(l) && other.contains(&-l))
    }

    /// A lattice point in the relative interior (sum of the rays).
    pub fn interior_point(&self) -> IntVector {
        self.rays
            .iter()
            .fold(IntVector::zeros(self.ambient_rank), |acc, r| &acc + r)
    }

    /// Indices of facets vanishing on the whole of `other` (a subcone).
    pub fn tight_facets_on(&self, other: &Cone) -> Vec<usize> {
        let gens = other.generators();
        (0..self.inequalities.len())
            .filter(|&i| gens.iter().all(|g| self.inequalities[i].dot(g).is_zero()))
            .collect()
    }

    /// Rank of the span of a subset of the rays together with the lineality.
    fn span_dim(&self, ray_ids: &[usize]) -> usize {
        let mut vs: Vec<IntVector> = ray_ids.iter().map(|&i| self.rays[i].clone()).collect();
        vs.extend(self.lineality.basis().iter().cloned());
        rank(self.ambient_rank, &vs)
    }

    /// The closed face whose tight set is `tight` (given as facet indices).
    pub fn face_cone(&self, tight: &[usize]) -> Cone {
        let mut eqs: Vec<IntVector> = self.equations.basis().to_vec();
        eqs.extend(tight.iter().map(|&i| self.inequalities[i].clone()));
        let gens: Vec<IntVector> = self
            .generators()
            .into_iter()
            .filter(|g| eqs.iter().all(|e| e.dot(g).is_zero()))
            .collect();
        Cone::from_generators(self.ambient_rank, &gens).expect("generators have ambient length")
    }

    pub fn face_lattice(&self) -> FaceLattice {
        faces::enumerate(self)
    }

    /// The face containing `x` in its relative interior.
    pub fn minimal_face_of_point(&self, x: &RationalVector) -> Result<FaceHandle> {
        if !self.contains_rational(x) {
            return Err(Error::NotInCone(x.to_string()));
        }
        let tight: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| x.dot_int(&self.inequalities[i]).is_zero())
            .collect();
        self.face_lattice()
            .faces
            .into_iter()
            .find(|f| f.tight_set == tight)
            .ok_or_else(|| Error::Internal(format!("no face with tight set {tight:?}")))
    }

    /// Evaluates each facet at `x`.
    pub fn slack(&self, x: &RationalVector) -> Vec<BigRational> {
        self.inequalities.iter().map(|a| x.dot_int(a)).collect()
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

pub fn is_pointed(c: &Cone) -> bool {
    c.is_pointed()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn quadrant() -> Cone {
        Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap()
    }

    #[test]
    fn semigroup_generators_give_the_quadrant() {
        let c = dd_convert(2, ConeInput::Rays(vec![v(&[2, 0]), v(&[0, 1]), v(&[1, 1])])).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.inequalities(), &[v(&[0, 1]), v(&[1, 0])]);
        assert!(c.is_pointed());
        assert_eq!(c, quadrant());
    }

    #[test]
    fn halfspace_has_planar_lineality() {
        let c = dd_convert(3, ConeInput::Inequalities(vec![v(&[0, 0, 1])])).unwrap();
        assert_eq!(c.lineality().basis(), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(c.rays(), &[v(&[0, 0, 1])]);
        assert!(!c.is_pointed());
    }

    #[test]
    fn no_inequalities_is_the_full_space() {
        let c = dd_convert(2, ConeInput::Inequalities(vec![])).unwrap();
        assert_eq!(c, Cone::full(2));
        assert!(c.rays().is_empty());
        assert!(!c.is_pointed());
        assert_eq!(dd_convert(2, ConeInput::Rays(vec![])).unwrap(), Cone::zero(2));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            dd_convert(2, ConeInput::Rays(vec![v(&[1, 0, 0])])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(quadrant().dual(), quadrant());
        let ray = Cone::from_generators(2, &[v(&[1, 0])]).unwrap();
        let half = Cone::from_constraints(2, &[v(&[1, 0])], &[]).unwrap();
        assert_eq!(ray.dual(), half);
        assert_eq!(Cone::zero(2).dual(), Cone::full(2));
    }

    #[test]
    fn dual_of_swap_matches_recomputation() {
        let c = Cone::from_generators(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])]).unwrap();
        let recomputed = Cone::from_constraints(3, c.rays(), &[]).unwrap();
        assert_eq!(c.dual(), recomputed);
    }

    #[test]
    fn minimal_face_examples() {
        let q = quadrant();
        let at = |xs: &[i64]| q.minimal_face_of_point(&v(xs).to_rational()).unwrap();
        assert_eq!(at(&[1, 1]).dim, 2);
        let axis = at(&[3, 0]);
        assert_eq!((axis.dim, axis.tight_set.clone()), (1, vec![0]));
        assert_eq!(at(&[0, 0]).dim, 0);
        assert!(q.minimal_face_of_point(&v(&[-1, 0]).to_rational()).is_err());
    }

    #[test]
    fn pointedness() {
        assert!(quadrant().is_pointed());
        assert!(!Cone::from_constraints(3, &[v(&[0, 0, 1])], &[]).unwrap().is_pointed());
        assert!(!Cone::full(2).is_pointed());
    }
}
