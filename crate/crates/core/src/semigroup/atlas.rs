use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::piece::{Piece, SearchConfig};
use super::spec::SemigroupSpec;
use crate::cone::{Cone, FaceHandle};
use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::linalg::Lattice;

/// One face `P` of `S` with its cone `C_j = α(P)`, group `Γ_j` and the dual
/// cone `C^j` written in coordinates of the Hermite basis of `Γ_j`.
#[derive(Clone, Debug)]
pub struct FaceData {
    /// `tight_set` refers to the facets of `α(S)` vanishing on `C_j`.
    pub handle: FaceHandle,
    pub cone: Cone,
    pub lattice: Lattice,
    pub torsion: Vec<BigInt>,
    /// `C_j` in `Γ_j` coordinates (full-dimensional there).
    pub cone_local: Cone,
    pub dual_cone_local: Cone,
    /// Input generators lying on the face (generator-described pieces only).
    pub member_generators: Vec<IntVector>,
}

impl FaceData {
    pub fn id(&self) -> usize {
        self.handle.id
    }

    pub fn dim(&self) -> usize {
        self.handle.dim
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// The complete face analysis of a semigroup.
#[derive(Clone, Debug)]
pub struct SpectrumAtlas {
    pub spec: SemigroupSpec,
    /// Face 0 is `S` itself.
    pub faces: Vec<FaceData>,
    /// `(upper, lower)` cover pairs, sorted.
    pub hasse: Vec<(usize, usize)>,
    pub antisymmetric: bool,
    pub separating: bool,
    /// `α(S)`.
    pub ambient_cone: Cone,
    /// Expansion rounds that produced at least one new face.
    pub expansion_rounds: usize,
    pub(crate) order: Vec<Vec<bool>>,
    pub(crate) config: SearchConfig,
    pub(crate) top: Piece,
}

/// A failed check of the compatibility conditions between faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdataViolation {
    pub condition: char,
    pub lower: usize,
    pub upper: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SdataReport {
    pub pairs_checked: usize,
    pub violations: Vec<SdataViolation>,
}

impl SdataReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SdataViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} fails for faces {} <= {}: {}", self.condition, self.lower, self.upper, self.detail)
    }
}

/// `α(S)`: the cone over the generators, or the closed halfspace of a tower.
pub fn asymptotic_cone(spec: &SemigroupSpec) -> Result<Cone> {
    Ok(Piece::from_spec(spec)?.cone)
}

pub fn enumerate_faces(spec: &SemigroupSpec) -> Result<SpectrumAtlas> {
    SpectrumAtlas::build(spec, SearchConfig::default())
}

/// Runs the expansion procedure: start from `{S}` and add `P ∩ F` for every
/// found face `P` and every closed face `F` of `α(P)` until nothing changes.
fn expand(top: &Piece) -> Result<(Vec<Piece>, usize)> {
    let mut found: Vec<Piece> = vec![top.clone()];
    let mut index: BTreeMap<Cone, usize> = BTreeMap::from([(top.cone.clone(), 0)]);
    let mut frontier = vec![0];
    let mut rounds = 0;
    loop {
        let mut added = Vec::new();
        for &i in &frontier {
            for q in found[i].face_intersections()? {
                if let Some(&existing) = index.get(&q.cone) {
                    if found[existing].lattice != q.lattice {
                        return Err(Error::Internal(format!(
                            "two faces share the cone with rays {:?}",
                            q.cone.rays()
                        )));
                    }
                    continue;
                }
                index.insert(q.cone.clone(), found.len());
                added.push(found.len());
                found.push(q);
            }
        }
        if added.is_empty() {
            return Ok((found, rounds));
        }
        rounds += 1;
        frontier = added;
    }
}

fn local_cone(cone: &Cone, lattice: &Lattice) -> Result<Cone> {
    let mut gens = Vec::new();
    for g in cone.generators() {
        let c = lattice.coordinates(&g).ok_or_else(|| {
            Error::Internal(format!("cone generator {g} is outside the span of its lattice"))
        })?;
        gens.push(c.clear_denominators());
    }
    Cone::from_generators(lattice.rank(), &gens)
}

impl SpectrumAtlas {
    pub fn build(spec: &SemigroupSpec, config: SearchConfig) -> Result<SpectrumAtlas> {
        let top = Piece::from_spec(spec)?;
        let ambient_cone = top.cone.clone();
        let (pieces, expansion_rounds) = expand(&top)?;

        let mut keyed: Vec<(usize, Vec<usize>, Piece)> = pieces
            .into_iter()
            .map(|p| (p.cone.dim(), ambient_cone.tight_facets_on(&p.cone), p))
            .collect();
        let mut rest = keyed.split_off(1);
        rest.sort_by(|a, b| {
            b.0.cmp(&a.0)
                .then_with(|| a.1.cmp(&b.1))
                .then_with(|| a.2.cone.rays().cmp(b.2.cone.rays()))
                .then_with(|| a.2.cone.lineality().cmp(b.2.cone.lineality()))
        });
        keyed.extend(rest);

        let mut faces = Vec::with_capacity(keyed.len());
        for (id, (dim, tight_set, piece)) in keyed.into_iter().enumerate() {
            let cone_local = local_cone(&piece.cone, &piece.lattice)?;
            faces.push(FaceData {
                handle: FaceHandle { id, tight_set, dim },
                cone: piece.cone.clone(),
                torsion: piece.lattice.quotient_invariants().torsion,
                lattice: piece.lattice.clone(),
                dual_cone_local: cone_local.dual(),
                cone_local,
                member_generators: piece.generators().to_vec(),
            });
        }

        let k = faces.len();
        let order: Vec<Vec<bool>> = (0..k)
            .map(|a| (0..k).map(|b| faces[a].cone.is_subcone_of(&faces[b].cone)).collect())
            .collect();
        let mut hasse = Vec::new();
        for upper in 0..k {
            for lower in 0..k {
                if lower == upper || !order[lower][upper] {
                    continue;
                }
                let between = (0..k).any(|m| {
                    m != lower && m != upper && order[lower][m] && order[m][upper]
                });
                if !between {
                    hasse.push((upper, lower));
                }
            }
        }
        hasse.sort();

        Ok(SpectrumAtlas {
            spec: spec.clone(),
            antisymmetric: top.is_antisymmetric(&config)?,
            separating: top.lattice.is_full(),
            faces,
            hasse,
            ambient_cone,
            expansion_rounds,
            order,
            config,
            top,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_cone.ambient_rank()
    }

    pub fn face(&self, id: usize) -> Result<&FaceData> {
        self.faces.get(id).ok_or(Error::UnknownFace(id))
    }

    /// `a ≤ b` in the face order (inclusion of faces).
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    pub fn contains(&self, x: &IntVector) -> Result<bool> {
        self.top.contains(x, &self.config)
    }

    /// Membership in the hull: `x ∈ Γ_j ∩ relint C_j` for some face.
    pub fn hull_contains(&self, x: &IntVector) -> Result<bool> {
        if x.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank(), found: x.len() });
        }
        Ok(self
            .faces
            .iter()
            .any(|f| f.cone.relative_interior_contains(x) && f.lattice.contains(x)))
    }

    pub fn face_group(&self, id: usize) -> Result<&Lattice> {
        Ok(&self.face(id)?.lattice)
    }

    pub fn dual_face_cone(&self, id: usize) -> Result<&Cone> {
        Ok(&self.face(id)?.dual_cone_local)
    }

    pub fn top_face(&self) -> usize {
        0
    }

    /// The least face (the least idempotent).
    pub fn least_face(&self) -> usize {
        (0..self.faces.len())
            .find(|&j| (0..self.faces.len()).all(|k| self.order[j][k]))
            .expect("faces are closed under intersection")
    }

    /// The least face, when it is `{0}` (then its idempotent is a zero).
    pub fn zero_face(&self) -> Option<usize> {
        let least = self.least_face();
        (self.faces[least].dim() == 0).then_some(least)
    }

    /// A member of `S` in the relative interior of `α(S)`.
    pub fn interior_member(&self) -> IntVector {
        self.top.interior_member()
    }

    pub fn search_config(&self) -> SearchConfig {
        self.config
    }

    /// Checks conditions A) to C) on every comparable pair of faces.
    pub fn validate_sdata(&self) -> SdataReport {
        let mut report = SdataReport::default();
        for face in &self.faces {
            if let Some(v) = check_lattice_cone(face) {
                report.violations.push(v);
            }
        }
        for j in 0..self.faces.len() {
            for k in 0..self.faces.len() {
                if !self.order[j][k] {
                    continue;
                }
                report.pairs_checked += 1;
                let (lo, hi) = (&self.faces[j], &self.faces[k]);
                let mut fail = |condition: char, detail: String| {
                    report.violations.push(SdataViolation { condition, lower: j, upper: k, detail })
                };
                if !lo.cone.is_subcone_of(&hi.cone) {
                    fail('A', "cone not contained".into());
                } else if j != k && hi.cone.tight_facets_on(&lo.cone).is_empty() {
                    fail('A', "cone meets the relative interior of the larger cone".into());
                }
                if !hi.lattice.contains_lattice(&lo.lattice) {
                    fail('C', "lattice not contained".into());
                }
            }
        }
        report
    }
}

/// Condition B): `C_j = α(Γ_j ∩ C_j)`.
fn check_lattice_cone(face: &FaceData) -> Option<SdataViolation> {
    let fail = |detail: String| {
        Some(SdataViolation { condition: 'B', lower: face.id(), upper: face.id(), detail })
    };
    if face.lattice.rank() != face.cone.dim() {
        return fail(format!("rank {} differs from cone dimension {}", face.lattice.rank(), face.cone.dim()));
    }
    for b in face.lattice.basis() {
        if face.cone.equations().basis().iter().any(|e| !e.dot(b).is_zero()) {
            return fail(format!("lattice vector {b} leaves the span of the cone"));
        }
    }
    // Each cone generator must have a positive multiple in the lattice.
    for g in face.cone.generators() {
        let Some(coords) = face.lattice.coordinates(&g) else {
            return fail(format!("generator {g} outside the lattice span"));
        };
        let multiple = coords
            .iter()
            .fold(BigInt::from(1), |l, q| num_integer::Integer::lcm(&l, q.denom()));
        if !face.lattice.contains(&g.scale(&multiple)) {
            return fail(format!("no multiple of {g} in the lattice"));
        }
    }
    None
}
