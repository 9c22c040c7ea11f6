use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use super::Cone;

/// A closed face of a cone, identified by the facets that vanish on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceHandle {
    pub id: usize,
    /// Sorted indices into [`Cone::inequalities`].
    pub tight_set: Vec<usize>,
    pub dim: usize,
}

/// All closed faces with their Hasse diagram.
///
/// Faces are ordered by dimension (descending) and then by tight set; face
/// ids are positions in that order, so id 0 is the cone itself and the last
/// id is the lineality space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<FaceHandle>,
    /// `(upper, lower)` pairs where `upper` covers `lower`, sorted.
    pub covers: Vec<(usize, usize)>,
    /// Ray indices contained in each face.
    pub ray_sets: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `a ⊆ b` as faces.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.faces[b]
            .tight_set
            .iter()
            .all(|t| self.faces[a].tight_set.contains(t))
    }

    /// Meet of two faces (their intersection).
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let tight: BTreeSet<usize> = self.faces[a]
            .tight_set
            .iter()
            .chain(&self.faces[b].tight_set)
            .copied()
            .collect();
        // The meet is the largest face whose tight set contains both.
        self.faces
            .iter()
            .filter(|f| tight.iter().all(|t| f.tight_set.contains(t)))
            .max_by_key(|f| f.dim)
            .map(|f| f.id)
            .expect("the lineality face is tight on every facet")
    }
}

pub(super) fn enumerate(cone: &Cone) -> FaceLattice {
    let facets = cone.inequalities();
    let rays = cone.rays();
    let facet_rays: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|a| (0..rays.len()).filter(|&j| a.dot(&rays[j]).is_zero()).collect())
        .collect();

    // Close the family of facet ray-sets under intersection, starting from C.
    let top: BTreeSet<usize> = (0..rays.len()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([top.clone()]);
    seen.insert(top);
    while let Some(face) = queue.pop_front() {
        for f in &facet_rays {
            let next: BTreeSet<usize> = face.intersection(f).copied().collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }

    let mut entries: Vec<(usize, Vec<usize>, Vec<usize>)> = seen
        .into_iter()
        .map(|ray_set| {
            let tight: Vec<usize> = (0..facets.len())
                .filter(|&i| ray_set.is_subset(&facet_rays[i]))
                .collect();
            let ids: Vec<usize> = ray_set.into_iter().collect();
            let dim = cone.span_dim(&ids);
            (dim, tight, ids)
        })
        .collect();
    entries.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let faces: Vec<FaceHandle> = entries
        .iter()
        .enumerate()
        .map(|(id, (dim, tight, _))| FaceHandle { id, tight_set: tight.clone(), dim: *dim })
        .collect();
    let ray_sets: Vec<Vec<usize>> = entries.into_iter().map(|e| e.2).collect();

    let by_dim: BTreeMap<usize, Vec<usize>> = faces.iter().fold(BTreeMap::new(), |mut m, f| {
        m.entry(f.dim).or_insert_with(Vec::new).push(f.id);
        m
    });
    let mut covers = Vec::new();
    for upper in &faces {
        let Some(dim) = upper.dim.checked_sub(1) else { continue };
        for &lower in by_dim.get(&dim).into_iter().flatten() {
            if upper.tight_set.iter().all(|t| faces[lower].tight_set.contains(t)) {
                covers.push((upper.id, lower));
            }
        }
    }
    covers.sort();
    FaceLattice { faces, covers, ray_sets }
}

#[cfg(test)]
mod tests {
    use crate::cone::Cone;
    use crate::linalg::IntVector;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    #[test]
    fn quadrant_has_four_faces() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let fl = c.face_lattice();
        assert_eq!(fl.len(), 4);
        assert_eq!(fl.faces.iter().map(|f| f.dim).collect::<Vec<_>>(), vec![2, 1, 1, 0]);
        assert_eq!(fl.covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(fl.meet(1, 2), 3);
    }

    #[test]
    fn halfspace_has_two_faces() {
        let c = Cone::from_constraints(3, &[v(&[0, 0, 1])], &[]).unwrap();
        let fl = c.face_lattice();
        assert_eq!(fl.len(), 2);
        assert_eq!(fl.faces[1].dim, 2);
    }

    #[test]
    fn simplicial_orthant_has_eight_faces() {
        let c = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let fl = c.face_lattice();
        assert_eq!(fl.len(), 8);
        assert_eq!(fl.covers.len(), 12);
    }

    #[test]
    fn square_cone_is_not_simplicial() {
        let c = Cone::from_generators(
            3,
            &[v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1])],
        )
        .unwrap();
        // apex, 4 rays, 4 two-dimensional faces, the cone
        assert_eq!(c.face_lattice().len(), 10);
    }
}
