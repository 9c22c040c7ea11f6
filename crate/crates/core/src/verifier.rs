//! Brute-force oracles for testing.
//!
//! These work on machine integers inside a finite window `[−B, B]ⁿ` and are
//! written from the definitions: membership by exhaustive decomposition,
//! faces as box subsets that pass the subsemigroup and ideal tests, cone
//! membership by Carathéodory subsets. They share only input data with the
//! exact code they check.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::semigroup::{SemigroupSpec, SpectrumAtlas};
use crate::spectrum::Character;

type Q = Ratio<i128>;
type Point = Vec<i64>;
pub type PointSet = BTreeSet<Point>;

/// The test window `[−radius, radius]ⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    radius: i64,
}

impl BoxSpec {
    pub fn new(radius: i64) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidSpec(format!("box radius must be at least 1, got {radius}")));
        }
        Ok(BoxSpec { radius })
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// All lattice points of the window in lexicographic order.
    pub fn points(&self, n: usize) -> Vec<Point> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (-self.radius..=self.radius).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn holds(&self, x: &[i64]) -> bool {
        x.iter().all(|c| c.abs() <= self.radius)
    }
}

fn small(v: &IntVector) -> Result<Point> {
    v.to_i64s().ok_or_else(|| Error::Unsupported(format!("{v} exceeds machine integers")))
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss elimination keeps every intermediate entry a minor.
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    if k == 0 {
        1
    } else {
        sign * m[k - 1][k - 1]
    }
}

/// A primitive vector orthogonal to `n − 1` vectors in ℤⁿ (zero if they are dependent).
fn orthogonal(vectors: &[&Point], n: usize) -> Option<Point> {
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i128>> = vectors
            .iter()
            .map(|v| (0..n).filter(|&c| c != skip).map(|c| v[c] as i128).collect())
            .collect();
        let d = det(minor);
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = out.iter().fold(0, |acc, &x| gcd(acc, x));
    if g == 0 {
        return None;
    }
    out.into_iter().map(|x| i64::try_from(x / g).ok()).collect()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Functionals orthogonal to `n − 1` of the given vectors (padded with unit
/// vectors) that are nonnegative on every point of `check`, both signs tried.
fn supporting_normals(vectors: &[Point], check: &[Point], n: usize) -> Vec<Point> {
    let mut pool: Vec<Point> = vectors.to_vec();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pool.push(e);
    }
    pool.sort();
    pool.dedup();
    let mut found = BTreeSet::new();
    for subset in subsets(pool.len(), n.saturating_sub(1)) {
        let chosen: Vec<&Point> = subset.iter().map(|&i| &pool[i]).collect();
        let Some(phi) = orthogonal(&chosen, n) else { continue };
        for cand in [phi.clone(), phi.iter().map(|x| -x).collect()] {
            if check.iter().all(|x| dot(&cand, x) >= 0) {
                found.insert(cand);
            }
        }
    }
    found.into_iter().collect()
}

/// Membership in `S` by definition.
enum Oracle {
    Generators {
        generators: Vec<Point>,
        positive: Point,
        memo: HashMap<Point, bool>,
    },
    /// Non-pointed case: everything reachable from 0 by adding generators
    /// without leaving `[−radius, radius]ⁿ`. For a radius well beyond the
    /// query box this recovers `S ∩ box` for small generators.
    Reachable {
        radius: i64,
        set: HashSet<Point>,
    },
    Tower {
        normal: Point,
        basis: Vec<Point>,
        inner: Box<Oracle>,
    },
}

impl Oracle {
    fn new(spec: &SemigroupSpec, window: BoxSpec) -> Result<Oracle> {
        match spec {
            SemigroupSpec::Generators { ambient_rank, generators } => {
                let n = *ambient_rank;
                let mut gens = Vec::new();
                for g in generators {
                    let g = small(g)?;
                    if g.iter().any(|&c| c != 0) {
                        gens.push(g);
                    }
                }
                gens.sort();
                gens.dedup();
                let positive = supporting_normals(&gens, &gens, n)
                    .iter()
                    .fold(vec![0; n], |acc, phi| add(&acc, phi));
                if gens.iter().all(|g| dot(&positive, g) > 0) {
                    return Ok(Oracle::Generators { generators: gens, positive, memo: HashMap::new() });
                }
                let largest = gens.iter().flatten().map(|c| c.abs()).max().unwrap_or(0);
                let radius = 3 * window.radius() + largest;
                if (2 * radius + 1).checked_pow(n as u32).is_none_or(|size| size > 2_000_000) {
                    return Err(Error::Unsupported(
                        "the brute-force oracle cannot cover a non-pointed cone in this dimension".into(),
                    ));
                }
                let mut set = HashSet::from([vec![0; n]]);
                let mut frontier = vec![vec![0; n]];
                while let Some(x) = frontier.pop() {
                    for g in &gens {
                        let y = add(&x, g);
                        if y.iter().all(|c| c.abs() <= radius) && set.insert(y.clone()) {
                            frontier.push(y);
                        }
                    }
                }
                Ok(Oracle::Reachable { radius, set })
            }
            SemigroupSpec::Tower { normal, inner, .. } => {
                let basis = SemigroupSpec::boundary_basis(normal)
                    .basis()
                    .iter()
                    .map(small)
                    .collect::<Result<Vec<_>>>()?;
                Ok(Oracle::Tower { normal: small(normal)?, basis, inner: Box::new(Oracle::new(inner, window)?) })
            }
        }
    }

    fn contains(&mut self, x: &[i64]) -> Result<bool> {
        match self {
            Oracle::Generators { generators, positive, memo } => {
                Ok(decompose(x, generators, positive, memo))
            }
            Oracle::Reachable { radius, set } => {
                if x.iter().any(|c| c.abs() > *radius) {
                    return Err(Error::Unsupported(format!("{x:?} lies outside the oracle window")));
                }
                Ok(set.contains(x))
            }
            Oracle::Tower { normal, basis, inner } => {
                let s = dot(normal, x);
                if s != 0 {
                    return Ok(s > 0);
                }
                let y = solve(basis, x)
                    .ok_or_else(|| Error::Internal(format!("{x:?} is not on the boundary lattice")))?;
                inner.contains(&y)
            }
        }
    }
}

fn decompose(x: &[i64], gens: &[Point], positive: &[i64], memo: &mut HashMap<Point, bool>) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    if dot(positive, x) <= 0 {
        return false;
    }
    if let Some(&known) = memo.get(x) {
        return known;
    }
    let found = gens.iter().any(|g| {
        let rest = sub(x, g);
        dot(positive, &rest) >= 0 && decompose(&rest, gens, positive, memo)
    });
    memo.insert(x.to_vec(), found);
    found
}

/// Integer coefficients `y` with `Σ yᵢ basisᵢ = x`, if they exist.
fn solve(basis: &[Point], x: &[i64]) -> Option<Point> {
    let c = rational_solve(basis, x)?;
    c.iter().map(|q| if q.is_integer() { i64::try_from(q.to_integer()).ok() } else { None }).collect()
}

/// Rational `c` with `Σ cᵢ vᵢ = x` for linearly independent `vᵢ`.
fn rational_solve(vectors: &[Point], x: &[i64]) -> Option<Vec<Q>> {
    let n = x.len();
    let k = vectors.len();
    // Augmented n × (k+1) system.
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = vectors.iter().map(|v| Q::from_integer(v[r] as i128)).collect();
            row.push(Q::from_integer(x[r] as i128));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(r) = (pivot_row..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(pivot_row, r);
        let p = m[pivot_row][col];
        for c in col..=k {
            m[pivot_row][c] /= p;
        }
        for r in 0..n {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=k {
                    let delta = f * m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < k || m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k]).collect())
}

fn is_independent(vectors: &[&Point], n: usize) -> bool {
    let k = vectors.len();
    let rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&c| Q::from_integer(c as i128)).collect()).collect();
    let mut m = rows;
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..k).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, r);
        for r in rank + 1..k {
            let f = m[r][col] / m[rank][col];
            for c in col..n {
                let delta = f * m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank == k
}

/// `S ∩ box`, sorted.
pub fn box_members(spec: &SemigroupSpec, window: BoxSpec) -> Result<Vec<Point>> {
    let mut oracle = Oracle::new(spec, window)?;
    let mut out = Vec::new();
    for x in window.points(spec.ambient_rank()) {
        if oracle.contains(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Box subsets of `S` that are cut out by supporting functionals and pass
/// the subsemigroup and ideal tests inside the box.
pub fn brute_force_faces(spec: &SemigroupSpec, window: BoxSpec) -> Result<Vec<PointSet>> {
    let n = spec.ambient_rank();
    let members = box_members(spec, window)?;
    let index: HashMap<&Point, usize> = members.iter().enumerate().map(|(i, x)| (x, i)).collect();
    // Generator normals support all of S. Tower normals are built from box
    // points, so they must also support S on a doubled window; otherwise
    // functionals that merely bound the box corners slip through.
    let (generators, wide) = match spec {
        SemigroupSpec::Generators { generators, .. } => {
            (Some(generators.iter().map(small).collect::<Result<Vec<_>>>()?), members.clone())
        }
        SemigroupSpec::Tower { .. } => (None, box_members(spec, BoxSpec::new(2 * window.radius())?)?),
    };

    // Faces of faces are faces, so non-exposed faces are reached by
    // cutting again inside each set found so far.
    let all: Vec<usize> = (0..wide.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([all.clone()]);
    let mut queue = vec![(all, Vec::<Point>::new())];
    while let Some((set, tight)) = queue.pop() {
        let points: Vec<Point> = set.iter().map(|&i| wide[i].clone()).collect();
        let directions = match &generators {
            Some(g) => g.iter().filter(|g| tight.iter().all(|phi| dot(phi, g) == 0)).cloned().collect(),
            None => irreducible_directions(&points, window),
        };
        let mut check = directions.clone();
        check.extend(points.iter().cloned());
        for phi in supporting_normals(&directions, &check, n) {
            let cut: Vec<usize> = set.iter().copied().filter(|&i| dot(&phi, &wide[i]) == 0).collect();
            if seen.insert(cut.clone()) {
                let mut t = tight.clone();
                t.push(phi);
                queue.push((cut, t));
            }
        }
    }

    let mut faces = BTreeSet::new();
    for candidate in seen {
        let restricted: PointSet =
            candidate.iter().map(|&i| &wide[i]).filter(|x| window.holds(x)).cloned().collect();
        let inside: Vec<bool> = members.iter().map(|x| restricted.contains(x)).collect();
        if is_face_in_box(&members, &index, &inside, window) {
            faces.insert(restricted);
        }
    }
    Ok(faces.into_iter().collect())
}

/// Primitive directions of the nonzero box points that are not a sum of two
/// other nonzero box points of the set.
fn irreducible_directions(points: &[Point], window: BoxSpec) -> Vec<Point> {
    let nonzero: Vec<&Point> = points.iter().filter(|x| window.holds(x) && x.iter().any(|&c| c != 0)).collect();
    let set: HashSet<&Point> = points.iter().collect();
    let mut out: Vec<Point> = nonzero
        .iter()
        .filter(|x| !nonzero.iter().any(|y| y != *x && set.contains(&sub(x, y))))
        .map(|x| {
            let g = x.iter().fold(0i128, |acc, &c| gcd(acc, c as i128)) as i64;
            x.iter().map(|c| c / g).collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn is_face_in_box(members: &[Point], index: &HashMap<&Point, usize>, inside: &[bool], window: BoxSpec) -> bool {
    let zero = vec![0; members.first().map_or(0, |x| x.len())];
    if !index.get(&zero).is_some_and(|&i| inside[i]) {
        return false;
    }
    for (i, x) in members.iter().enumerate() {
        for (j, y) in members.iter().enumerate().skip(i) {
            let s = add(x, y);
            if !window.holds(&s) {
                continue;
            }
            let Some(&k) = index.get(&s) else { continue };
            // Subsemigroup: P + P ⊆ P. Ideal: (S∖P) + S ⊆ S∖P.
            if inside[i] && inside[j] && !inside[k] {
                return false;
            }
            if (!inside[i] || !inside[j]) && inside[k] {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOracleReport {
    pub box_points: usize,
    pub oracle: Vec<PointSet>,
    pub atlas: Vec<PointSet>,
    /// Box points where the atlas and the oracle disagree on membership.
    pub membership_mismatches: Vec<Point>,
}

impl FaceOracleReport {
    pub fn agrees(&self) -> bool {
        self.oracle == self.atlas && self.membership_mismatches.is_empty()
    }
}

/// Compares [`brute_force_faces`] with the atlas faces restricted to the box.
pub fn compare_faces(atlas: &SpectrumAtlas, window: BoxSpec) -> Result<FaceOracleReport> {
    let members = box_members(&atlas.spec, window)?;
    let mut mismatches = Vec::new();
    let member_set: HashSet<&Point> = members.iter().collect();
    for x in window.points(atlas.ambient_rank()) {
        if atlas.contains(&IntVector::from_i64s(&x))? != member_set.contains(&x) {
            mismatches.push(x);
        }
    }
    let restricted: BTreeSet<PointSet> = atlas
        .faces
        .iter()
        .map(|f| {
            members
                .iter()
                .filter(|x| f.cone.contains(&IntVector::from_i64s(x)))
                .cloned()
                .collect()
        })
        .collect();
    Ok(FaceOracleReport {
        box_points: members.len(),
        oracle: brute_force_faces(&atlas.spec, window)?,
        atlas: restricted.into_iter().collect(),
        membership_mismatches: mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdReport {
    pub points_checked: usize,
    pub mismatches: Vec<Point>,
}

impl DdReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Scans the box and compares the inequality description of `cone` with
/// nonnegative combinations of its rays and lineality basis.
pub fn dd_cross_check(cone: &Cone, window: BoxSpec) -> Result<DdReport> {
    let n = cone.ambient_rank();
    let inequalities = cone.inequalities().iter().map(small).collect::<Result<Vec<_>>>()?;
    let equations = cone.equations().basis().iter().map(small).collect::<Result<Vec<_>>>()?;
    let mut generators = cone.rays().iter().map(small).collect::<Result<Vec<_>>>()?;
    for l in cone.lineality().basis() {
        let l = small(l)?;
        generators.push(l.iter().map(|c| -c).collect());
        generators.push(l);
    }
    let mut bases: Vec<Vec<Point>> = Vec::new();
    for k in 1..=n.min(generators.len()) {
        for s in subsets(generators.len(), k) {
            let chosen: Vec<&Point> = s.iter().map(|&i| &generators[i]).collect();
            if is_independent(&chosen, n) {
                bases.push(chosen.into_iter().cloned().collect());
            }
        }
    }
    let points = window.points(n);
    let mut mismatches = Vec::new();
    for x in &points {
        let by_inequalities =
            inequalities.iter().all(|a| dot(a, x) >= 0) && equations.iter().all(|e| dot(e, x) == 0);
        let by_generators = x.iter().all(|&c| c == 0)
            || bases.iter().any(|b| {
                rational_solve(b, x).is_some_and(|c| c.iter().all(|q| *q >= Q::zero()))
            });
        if by_inequalities != by_generators {
            mismatches.push(x.clone());
        }
    }
    Ok(DdReport { points_checked: points.len(), mismatches })
}

fn random_rational<R: Rng>(rng: &mut R, max_numerator: i64) -> BigRational {
    let q = rng.gen_range(1..=8i64);
    let p = rng.gen_range(0..=max_numerator * q);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A uniformly chosen face with random rational unitary and radial parts.
pub fn random_character<R: Rng>(atlas: &SpectrumAtlas, rng: &mut R) -> Result<Character> {
    let face_id = rng.gen_range(0..atlas.faces.len());
    let face = atlas.face(face_id)?;
    let r = face.rank();
    let theta = (0..r).map(|_| random_rational(rng, 1)).collect();
    let dual = &face.dual_cone_local;
    let mut lambda = vec![BigRational::zero(); r];
    let mut terms: Vec<(IntVector, bool)> = dual.rays().iter().map(|g| (g.clone(), false)).collect();
    terms.extend(dual.lineality().basis().iter().map(|g| (g.clone(), true)));
    for (g, signed) in terms {
        let mut c = random_rational(rng, 3);
        if signed && rng.gen_bool(0.5) {
            c = -c;
        }
        for (l, gi) in lambda.iter_mut().zip(g.iter()) {
            *l += &c * BigRational::from_integer(gi.clone());
        }
    }
    atlas.character(face_id, theta, lambda)
}

/// A member of `S`, found by rejection sampling in the box with a fallback
/// to multiples of an interior member.
pub fn random_member<R: Rng>(atlas: &SpectrumAtlas, rng: &mut R, window: BoxSpec) -> Result<IntVector> {
    let n = atlas.ambient_rank();
    for _ in 0..64 {
        let x: Point = (0..n).map(|_| rng.gen_range(-window.radius()..=window.radius())).collect();
        let x = IntVector::from_i64s(&x);
        if atlas.contains(&x)? {
            return Ok(x);
        }
    }
    Ok(atlas.interior_member().scale(&BigInt::from(rng.gen_range(0..4))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomomorphismReport {
    pub trials: usize,
    /// Triples where the exact values of `χ₁χ₂(x)` and `χ₁(x)χ₂(x)` differ.
    pub exact_mismatches: usize,
    pub max_deviation: f64,
}

/// Seeded check of `(χ₁χ₂)(x) = χ₁(x)·χ₂(x)` on random triples.
pub fn numeric_homomorphism_check(atlas: &SpectrumAtlas, trials: usize, seed: u64) -> Result<HomomorphismReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = BoxSpec::new(4)?;
    let mut report = HomomorphismReport { trials, exact_mismatches: 0, max_deviation: 0.0 };
    for _ in 0..trials {
        let a = random_character(atlas, &mut rng)?;
        let b = random_character(atlas, &mut rng)?;
        let x = random_member(atlas, &mut rng, window)?;
        let joint = atlas.evaluate(&atlas.multiply(&a, &b)?, &x)?;
        let separate = atlas.evaluate(&a, &x)?.mul(&atlas.evaluate(&b, &x)?);
        if joint != separate {
            report.exact_mismatches += 1;
        }
        let (jr, ji) = joint.to_complex();
        let (ar, ai) = atlas.evaluate(&a, &x)?.to_complex();
        let (br, bi) = atlas.evaluate(&b, &x)?.to_complex();
        let (pr, pi) = (ar * br - ai * bi, ar * bi + ai * br);
        let deviation = (jr - pr).hypot(ji - pi);
        if deviation > report.max_deviation || deviation.is_nan() {
            report.max_deviation = deviation;
        }
    }
    Ok(report)
}
