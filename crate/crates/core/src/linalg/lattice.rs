use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::normal_form::{hermite_rows, integer_kernel, smith};
use super::vector::{IntVector, RationalVector};
use crate::error::{Error, Result};

/// A sublattice of ℤⁿ stored by its row-Hermite basis.
///
/// Because the Hermite form is canonical, two lattices are equal exactly when
/// their `Lattice` values compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_rank: usize,
    basis: Vec<IntVector>,
}

/// Structure of the quotient ℤⁿ / L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

fn check_lengths(n: usize, rows: &[IntVector]) -> Result<()> {
    match rows.iter().find(|r| r.len() != n) {
        Some(r) => Err(Error::DimensionMismatch { expected: n, found: r.len() }),
        None => Ok(()),
    }
}

fn as_matrix(rows: &[IntVector]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.0.clone()).collect()
}

/// Hermite basis of the lattice spanned by `rows` in ℤⁿ.
pub fn hnf(n: usize, rows: &[IntVector]) -> Result<Lattice> {
    check_lengths(n, rows)?;
    let basis = hermite_rows(&as_matrix(rows), n)
        .into_iter()
        .map(IntVector)
        .collect();
    Ok(Lattice { ambient_rank: n, basis })
}

impl Lattice {
    pub fn zero(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Lattice {
            ambient_rank: n,
            basis: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        *self == Lattice::full(self.ambient_rank)
    }

    /// Rational coordinates of `x` in the Hermite basis, or `None` when `x` is
    /// outside the rational span.
    pub fn coordinates(&self, x: &IntVector) -> Option<RationalVector> {
        self.coordinates_rational(&x.to_rational())
    }

    pub fn coordinates_rational(&self, x: &RationalVector) -> Option<RationalVector> {
        let mut rest: Vec<BigRational> = x.0.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|e| !e.is_zero())?;
            let c = &rest[p] / BigRational::from_integer(row[p].clone());
            if !c.is_zero() {
                for (r, e) in rest.iter_mut().zip(row.iter()) {
                    *r -= &c * BigRational::from_integer(e.clone());
                }
            }
            coords.push(c);
        }
        rest.iter().all(Zero::is_zero).then_some(RationalVector(coords))
    }

    /// Integer coordinates of `x` in the Hermite basis, if `x ∈ L`.
    pub fn integer_coordinates(&self, x: &IntVector) -> Option<Vec<BigInt>> {
        self.coordinates(x)?.to_integer().map(|v| v.0)
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.len() == self.ambient_rank && self.integer_coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Linear combination of basis rows with integer coefficients.
    pub fn combine(&self, coeffs: &[BigInt]) -> IntVector {
        let mut out = IntVector::zeros(self.ambient_rank);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (o, e) in out.iter_mut().zip(row.iter()) {
                *o += c * e;
            }
        }
        out
    }

    pub fn quotient_invariants(&self) -> QuotientInvariants {
        let s = smith(&as_matrix(&self.basis), self.ambient_rank);
        QuotientInvariants {
            free_rank: self.ambient_rank - s.diagonal.len(),
            torsion: s.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// The saturation `(ℚ-span of L) ∩ ℤⁿ` and the index `[saturation : L]`.
    pub fn saturation(&self) -> (Lattice, BigInt) {
        let n = self.ambient_rank;
        let perp = integer_kernel(&as_matrix(&self.basis), n);
        let sat_rows: Vec<IntVector> = integer_kernel(&perp, n).into_iter().map(IntVector).collect();
        let saturated = hnf(n, &sat_rows).expect("kernel rows have ambient length");
        let index = self
            .quotient_invariants()
            .torsion
            .into_iter()
            .fold(BigInt::one(), |acc, d| acc * d);
        (saturated, index)
    }

    /// Saturated lattice of integer vectors orthogonal to every basis row.
    pub fn orthogonal_complement(&self) -> Lattice {
        orthogonal_lattice(self.ambient_rank, &self.basis)
    }
}

/// Saturated lattice `{x ∈ ℤⁿ : ⟨r, x⟩ = 0 for every row r}`.
pub fn orthogonal_lattice(n: usize, rows: &[IntVector]) -> Lattice {
    let k: Vec<IntVector> = integer_kernel(&as_matrix(rows), n)
        .into_iter()
        .map(IntVector)
        .collect();
    hnf(n, &k).expect("kernel rows have ambient length")
}

/// Saturated lattice `span_ℚ(rows) ∩ ℤⁿ`.
pub fn saturated_span(n: usize, rows: &[IntVector]) -> Lattice {
    let perp = orthogonal_lattice(n, rows);
    orthogonal_lattice(n, perp.basis())
}

/// Rank of a list of integer vectors over ℚ.
pub fn rank(n: usize, rows: &[IntVector]) -> usize {
    hermite_rows(&as_matrix(rows), n).len()
}

/// Orthogonal projection of `x` onto the orthogonal complement of
/// `span(subspace)`, computed exactly.
pub fn project_out(x: &IntVector, subspace: &[IntVector]) -> RationalVector {
    let ortho = gram_schmidt(subspace);
    let mut out = x.to_rational();
    for u in &ortho {
        let c = out.dot(u) / u.dot(u);
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.0.iter_mut().zip(u.iter()) {
            *o -= &c * e;
        }
    }
    out
}

/// Rational Gram–Schmidt; linearly dependent inputs are skipped.
pub fn gram_schmidt(vectors: &[IntVector]) -> Vec<RationalVector> {
    let mut ortho: Vec<RationalVector> = Vec::new();
    for v in vectors {
        let mut w = v.to_rational();
        for u in &ortho {
            let c = w.dot(u) / u.dot(u);
            for (o, e) in w.0.iter_mut().zip(u.iter()) {
                *o -= &c * e;
            }
        }
        if !w.is_zero() {
            ortho.push(w);
        }
    }
    ortho
}

/// One rational solution `w` of `rows · w = rhs` (rows linearly independent).
pub fn solve_right(rows: &[IntVector], rhs: &[BigInt]) -> Option<RationalVector> {
    // Minimal-norm solution w = Rᵀ y with (R Rᵀ) y = rhs.
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..m)
                .map(|j| BigRational::from_integer(rows[i].dot(&rows[j])))
                .collect();
            row.push(BigRational::from_integer(rhs[i].clone()));
            row
        })
        .collect();
    for col in 0..m {
        let p = (col..m).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for e in aug[col].iter_mut() {
            *e /= &pivot;
        }
        for i in 0..m {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[col].clone();
                for (e, pr) in aug[i].iter_mut().zip(pivot_row) {
                    *e -= &f * pr;
                }
            }
        }
    }
    let y: Vec<BigRational> = aug.iter().map(|row| row[m].clone()).collect();
    let mut w = RationalVector::zeros(n);
    for (yi, row) in y.iter().zip(rows) {
        for (o, e) in w.0.iter_mut().zip(row.iter()) {
            *o += yi * BigRational::from_integer(e.clone());
        }
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    #[test]
    fn hnf_of_generators_matches_frozen_basis() {
        let l = hnf(2, &[v(&[2, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
    }

    #[test]
    fn hnf_identity_and_zero_rows() {
        assert_eq!(hnf(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap(), Lattice::full(2));
        assert_eq!(hnf(2, &[v(&[0, 0])]).unwrap().rank(), 0);
    }

    #[test]
    fn hnf_rejects_mismatched_rows() {
        assert_eq!(
            hnf(2, &[v(&[1, 0]), v(&[1, 0, 0])]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn quotient_invariants_examples() {
        let q = hnf(2, &[v(&[2, 0])]).unwrap().quotient_invariants();
        assert_eq!((q.free_rank, q.torsion), (1, vec![BigInt::from(2)]));
        let q = Lattice::full(2).quotient_invariants();
        assert_eq!((q.free_rank, q.torsion.len()), (0, 0));
        let q = hnf(2, &[v(&[2, 0]), v(&[0, 3])]).unwrap().quotient_invariants();
        assert_eq!((q.free_rank, q.torsion), (0, vec![BigInt::from(6)]));
    }

    #[test]
    fn membership_examples() {
        let l = hnf(2, &[v(&[2, 0])]).unwrap();
        assert!(l.contains(&v(&[4, 0])));
        assert!(!l.contains(&v(&[1, 0])));
        let l = hnf(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert!(l.contains(&v(&[3, 1])));
    }

    #[test]
    fn saturation_examples() {
        let (s, i) = hnf(2, &[v(&[2, 0])]).unwrap().saturation();
        assert_eq!((s.basis().to_vec(), i), (vec![v(&[1, 0])], BigInt::from(2)));
        let (s, i) = hnf(2, &[v(&[1, 1])]).unwrap().saturation();
        assert_eq!((s.basis().to_vec(), i), (vec![v(&[1, 1])], BigInt::one()));
        let (s, i) = hnf(2, &[v(&[2, 0]), v(&[0, 3])]).unwrap().saturation();
        assert_eq!((s, i), (Lattice::full(2), BigInt::from(6)));
    }

    #[test]
    fn projection_removes_subspace_component() {
        let p = project_out(&v(&[3, 1, 2]), &[v(&[1, 0, 0])]);
        assert_eq!(p.clear_denominators(), v(&[0, 1, 2]));
    }

    #[test]
    fn solve_right_finds_a_lift() {
        let rows = [v(&[1, 0, 0]), v(&[0, 1, 1])];
        let w = solve_right(&rows, &[BigInt::from(2), BigInt::from(3)]).unwrap();
        assert_eq!(w.dot_int(&rows[0]), BigRational::from_integer(2.into()));
        assert_eq!(w.dot_int(&rows[1]), BigRational::from_integer(3.into()));
    }
}
