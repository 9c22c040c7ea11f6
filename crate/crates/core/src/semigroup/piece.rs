//! Face semigroups in ambient coordinates.
//!
//! Every face of an accepted semigroup is again either finitely generated or
//! a half-lattice tower, so a [`Piece`] can describe `S` and each of its
//! faces uniformly, together with `α(P)` and the group `Γ_P` that `P`
//! generates.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::spec::SemigroupSpec;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{hnf, orthogonal_lattice, solve_right, IntVector, Lattice};

/// Budget for exact membership search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Search nodes explored before membership is reported as undecided.
    pub max_nodes: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_nodes: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum PieceKind {
    Finite {
        generators: Vec<IntVector>,
        tables: OnceLock<SearchTables>,
    },
    /// `{x ∈ Γ : ⟨normal, x⟩ > 0} ∪ boundary`.
    HalfTower {
        normal: IntVector,
        boundary: Box<Piece>,
    },
}

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub kind: PieceKind,
    /// `α(P)`.
    pub cone: Cone,
    /// The group generated by `P`.
    pub lattice: Lattice,
}

impl Piece {
    pub fn from_spec(spec: &SemigroupSpec) -> Result<Piece> {
        let n = spec.ambient_rank();
        let identity: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Self::build(spec, &identity, n)
    }

    /// `embedding` lists the ambient images of the spec's coordinate vectors.
    fn build(spec: &SemigroupSpec, embedding: &[IntVector], n: usize) -> Result<Piece> {
        let map = |x: &IntVector| -> IntVector {
            let mut out = IntVector::zeros(n);
            for (c, row) in x.iter().zip(embedding) {
                for (o, e) in out.iter_mut().zip(row.iter()) {
                    *o += c * e;
                }
            }
            out
        };
        match spec {
            SemigroupSpec::Generators { generators, .. } => {
                let gens: Vec<IntVector> = generators.iter().map(map).collect();
                Ok(Self::finite(n, SemigroupSpec::nonzero_generators(&gens)))
            }
            SemigroupSpec::Tower { normal, inner, .. } => {
                let inner_embedding: Vec<IntVector> = SemigroupSpec::boundary_basis(normal)
                    .basis()
                    .iter()
                    .map(map)
                    .collect();
                let boundary = Self::build(inner, &inner_embedding, n)?;
                let lift = solve_right(embedding, normal)
                    .ok_or_else(|| Error::Internal("tower normal has no ambient lift".into()))?
                    .clear_denominators();
                let equations = orthogonal_lattice(n, embedding);
                let cone = Cone::from_constraints(n, std::slice::from_ref(&lift), equations.basis())?;
                Ok(Piece {
                    kind: PieceKind::HalfTower { normal: lift, boundary: Box::new(boundary) },
                    cone,
                    lattice: hnf(n, embedding)?,
                })
            }
        }
    }

    fn finite(n: usize, generators: Vec<IntVector>) -> Piece {
        let cone = Cone::from_generators(n, &generators).expect("generators have ambient length");
        let lattice = hnf(n, &generators).expect("generators have ambient length");
        Piece { kind: PieceKind::Finite { generators, tables: OnceLock::new() }, cone, lattice }
    }

    pub fn ambient_rank(&self) -> usize {
        self.cone.ambient_rank()
    }

    pub fn generators(&self) -> &[IntVector] {
        match &self.kind {
            PieceKind::Finite { generators, .. } => generators,
            PieceKind::HalfTower { .. } => &[],
        }
    }

    /// One expansion step: `P ∩ F` for every closed face `F` of `α(P)`.
    pub fn face_intersections(&self) -> Result<Vec<Piece>> {
        let lattice = self.cone.face_lattice();
        let mut out = Vec::with_capacity(lattice.len());
        for face in &lattice.faces {
            let f = self.cone.face_cone(&face.tight_set);
            match &self.kind {
                PieceKind::Finite { generators, .. } => {
                    let on_face: Vec<IntVector> =
                        generators.iter().filter(|g| f.contains(g)).cloned().collect();
                    out.push(Self::finite(self.ambient_rank(), on_face));
                }
                PieceKind::HalfTower { normal, boundary } => {
                    if face.tight_set.is_empty() {
                        out.push(self.clone());
                    } else if f.generators().iter().all(|g| normal.dot(g).is_zero()) {
                        out.push((**boundary).clone());
                    } else {
                        return Err(Error::Internal(format!(
                            "unexpected face {:?} of a half-lattice cone",
                            face.tight_set
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, x: &IntVector, config: &SearchConfig) -> Result<bool> {
        if x.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank(), found: x.len() });
        }
        match &self.kind {
            PieceKind::Finite { generators, tables } => {
                let tables = tables.get_or_init(|| SearchTables::new(generators, &self.cone));
                Membership::new(tables, &self.cone, config).contains(x)
            }
            PieceKind::HalfTower { normal, boundary } => {
                if !self.lattice.contains(x) {
                    return Ok(false);
                }
                let s = normal.dot(x);
                if s.is_positive() {
                    Ok(true)
                } else if s.is_negative() {
                    Ok(false)
                } else {
                    boundary.contains(x, config)
                }
            }
        }
    }

    /// `S ∩ (−S) = {0}`.
    pub fn is_antisymmetric(&self, config: &SearchConfig) -> Result<bool> {
        match &self.kind {
            // If x and −x are in S then some generator g has −g ∈ S.
            PieceKind::Finite { generators, .. } => {
                for g in generators {
                    if self.contains(&-g, config)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PieceKind::HalfTower { boundary, .. } => boundary.is_antisymmetric(config),
        }
    }

    /// A member of `P` in the relative interior of `α(P)`.
    pub fn interior_member(&self) -> IntVector {
        match &self.kind {
            PieceKind::Finite { generators, .. } => generators
                .iter()
                .fold(IntVector::zeros(self.ambient_rank()), |acc, g| &acc + g),
            PieceKind::HalfTower { normal, .. } => self
                .lattice
                .basis()
                .iter()
                .find_map(|b| {
                    let s = normal.dot(b);
                    if s.is_positive() {
                        Some(b.clone())
                    } else if s.is_negative() {
                        Some(-b)
                    } else {
                        None
                    }
                })
                .expect("the normal does not vanish on its lattice"),
        }
    }
}

/// Exact membership in a finitely generated semigroup.
///
/// Generators inside the lineality space of `α(S)` generate a group `H`; the
/// remaining generators have strictly positive weight under `w`, the sum of
/// the facet normals, which bounds their coefficients by `w(x)`. A point is
/// a member iff some bounded combination of the positive generators leaves a
/// remainder in `H`.
#[derive(Clone, Debug)]
pub(crate) struct SearchTables {
    positive: Vec<(IntVector, BigInt)>,
    weight: IntVector,
    /// Cone and lattice generated by `positive[i..]` and the units, for each `i`.
    suffixes: Vec<(Cone, Lattice)>,
}

impl SearchTables {
    fn new(generators: &[IntVector], cone: &Cone) -> Self {
        let n = cone.ambient_rank();
        let weight = cone
            .inequalities()
            .iter()
            .fold(IntVector::zeros(n), |acc, a| &acc + a);
        let (units, mut positive): (Vec<_>, Vec<_>) = generators
            .iter()
            .map(|g| (g.clone(), weight.dot(g)))
            .partition(|(_, w)| w.is_zero());
        // Heavy generators first keeps the branching factor small near the root.
        positive.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let units: Vec<IntVector> = units.into_iter().map(|(g, _)| g).collect();
        let suffixes = (0..=positive.len())
            .map(|i| {
                let mut gens = units.clone();
                gens.extend(positive[i..].iter().map(|(g, _)| g.clone()));
                (
                    Cone::from_generators(n, &gens).expect("generators have ambient length"),
                    hnf(n, &gens).expect("generators have ambient length"),
                )
            })
            .collect();
        SearchTables { positive, weight, suffixes }
    }

    fn feasible(&self, i: usize, x: &IntVector) -> bool {
        let (cone, lattice) = &self.suffixes[i];
        lattice.contains(x) && cone.contains(x)
    }
}

/// Exact membership in a finitely generated semigroup.
///
/// Generators inside the lineality space of `α(S)` generate a group `H`; the
/// remaining generators have strictly positive weight under `w`, the sum of
/// the facet normals, which bounds their coefficients by `w(x)`. A point is
/// a member iff some bounded combination of the positive generators leaves a
/// remainder in `H`. Branches whose remainder leaves the cone or lattice of
/// the generators still available are cut.
struct Membership<'a> {
    tables: &'a SearchTables,
    cone: &'a Cone,
    config: &'a SearchConfig,
    nodes: u64,
    dead: HashSet<(usize, IntVector)>,
}

impl<'a> Membership<'a> {
    fn new(tables: &'a SearchTables, cone: &'a Cone, config: &'a SearchConfig) -> Self {
        Membership { tables, cone, config, nodes: 0, dead: HashSet::new() }
    }

    fn contains(mut self, x: &IntVector) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if !self.cone.contains(x) || !self.tables.feasible(0, x) {
            return Ok(false);
        }
        self.search(0, x.clone(), x)
    }

    /// Called only with `rest` feasible for `i`.
    fn search(&mut self, i: usize, rest: IntVector, target: &IntVector) -> Result<bool> {
        let tables = self.tables;
        if i == tables.positive.len() {
            return Ok(true);
        }
        if self.dead.contains(&(i, rest.clone())) {
            return Ok(false);
        }
        let (g, wg) = &tables.positive[i];
        let bound = tables.weight.dot(&rest).div_floor(wg);
        let mut cur = rest.clone();
        let mut k = BigInt::zero();
        while k <= bound {
            self.nodes += 1;
            if self.nodes > self.config.max_nodes {
                return Err(Error::Indeterminate { point: target.to_string(), nodes: self.config.max_nodes });
            }
            if tables.feasible(i + 1, &cur) && self.search(i + 1, cur.clone(), target)? {
                return Ok(true);
            }
            cur = &cur - g;
            k += 1;
        }
        self.dead.insert((i, rest));
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn piece(n: usize, gens: &[&[i64]]) -> Piece {
        Piece::from_spec(&SemigroupSpec::from_i64s(n, gens).unwrap()).unwrap()
    }

    #[test]
    fn membership_in_the_even_axis_example() {
        let p = piece(2, &[&[2, 0], &[0, 1], &[1, 1]]);
        let cfg = SearchConfig::default();
        assert!(!p.contains(&v(&[1, 0]), &cfg).unwrap());
        assert!(p.contains(&v(&[1, 1]), &cfg).unwrap());
        assert!(p.contains(&v(&[0, 0]), &cfg).unwrap());
        assert!(p.contains(&v(&[3, 2]), &cfg).unwrap());
        assert!(!p.contains(&v(&[3, 0]), &cfg).unwrap());
    }

    #[test]
    fn membership_with_lineality() {
        // S = ℤ × ℕ generated by (±1,0),(0,1); also S = 2ℤ × ℕ variant.
        let p = piece(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let cfg = SearchConfig::default();
        assert!(p.contains(&v(&[-7, 3]), &cfg).unwrap());
        assert!(!p.contains(&v(&[0, -1]), &cfg).unwrap());
        let p = piece(2, &[&[2, 0], &[-2, 0], &[1, 1]]);
        assert!(p.contains(&v(&[-3, 1]), &cfg).unwrap());
        assert!(!p.contains(&v(&[-3, 0]), &cfg).unwrap());
        assert!(!p.is_antisymmetric(&cfg).unwrap());
    }

    #[test]
    fn numerical_semigroup_gaps() {
        let p = piece(1, &[&[2], &[3]]);
        let cfg = SearchConfig::default();
        let members: Vec<i64> = (-3..8).filter(|&x| p.contains(&v(&[x]), &cfg).unwrap()).collect();
        assert_eq!(members, vec![0, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn search_budget_is_reported() {
        let p = piece(1, &[&[7], &[11]]);
        let cfg = SearchConfig { max_nodes: 3 };
        assert!(matches!(p.contains(&v(&[1000]), &cfg), Err(Error::Indeterminate { .. })));
    }
}
