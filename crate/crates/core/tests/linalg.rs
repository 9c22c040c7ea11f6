use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toric_spectrum::linalg::normal_form::smith;
use toric_spectrum::linalg::{hnf, orthogonal_lattice, IntVector, Lattice};

fn rows_of(m: &[Vec<i64>]) -> Vec<IntVector> {
    m.iter().map(|r| IntVector::from_i64s(r)).collect()
}

fn matrix(max_rows: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), 0..=max_rows)
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, n), n)
}

/// Leibniz expansion, independent of any elimination.
fn leibniz(m: &[Vec<i64>]) -> i128 {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (0..n).fold(sign as i128, |acc, i| acc * m[i][p[i]] as i128)
        })
        .sum()
}

/// Brute-force membership in the span of `rows` with coefficients in `[−c, c]`.
fn combination_search(rows: &[Vec<i64>], x: &[i64], c: i64) -> bool {
    fn go(rows: &[Vec<i64>], rest: Vec<i64>, c: i64) -> bool {
        match rows.split_first() {
            None => rest.iter().all(|&r| r == 0),
            Some((r, tail)) => (-c..=c).any(|k| {
                let next = rest.iter().zip(r).map(|(a, b)| a - k * b).collect();
                go(tail, next, c)
            }),
        }
    }
    go(rows, x.to_vec(), c)
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, r)| acc + x * &r[j])).collect())
        .collect()
}

#[test]
fn lattice_membership_matches_coefficient_search() {
    let rows = vec![vec![2, 1], vec![0, 3]];
    let l = hnf(2, &rows_of(&rows)).unwrap();
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            assert_eq!(
                l.contains(&IntVector::from_i64s(&[x, y])),
                combination_search(&rows, &[x, y], 12),
                "({x}, {y})"
            );
        }
    }
    assert_eq!(l.quotient_invariants().torsion, vec![BigInt::from(6)]);
}

#[test]
fn orthogonal_lattice_of_a_plane() {
    let perp = orthogonal_lattice(3, &rows_of(&[vec![1, 2, 3]]));
    assert_eq!(perp.rank(), 2);
    for b in perp.basis() {
        assert!(b.dot(&IntVector::from_i64s(&[1, 2, 3])).is_zero());
    }
    // Saturated: contains (2,-1,0) and (3,0,-1) and hence (1,1,-1).
    assert!(perp.contains(&IntVector::from_i64s(&[1, 1, -1])));
}

proptest! {
    #[test]
    fn hnf_is_idempotent(m in matrix(5, 3)) {
        let l = hnf(3, &rows_of(&m)).unwrap();
        prop_assert_eq!(hnf(3, l.basis()).unwrap(), l);
    }

    #[test]
    fn hnf_ignores_unimodular_row_operations(m in matrix(4, 3), i in 0usize..4, j in 0usize..4, k in -3i64..=3) {
        prop_assume!(m.len() >= 2);
        let (i, j) = (i % m.len(), j % m.len());
        prop_assume!(i != j);
        let mut moved = m.clone();
        for c in 0..3 {
            moved[i][c] += k * m[j][c];
        }
        moved.swap(0, j);
        prop_assert_eq!(hnf(3, &rows_of(&moved)).unwrap(), hnf(3, &rows_of(&m)).unwrap());
    }

    #[test]
    fn torsion_product_is_the_determinant(m in square(3)) {
        let det = leibniz(&m).abs();
        let inv = hnf(3, &rows_of(&m)).unwrap().quotient_invariants();
        if det == 0 {
            prop_assert!(inv.free_rank > 0);
        } else {
            prop_assert_eq!(inv.free_rank, 0);
            let product = inv.torsion.iter().fold(BigInt::one(), |acc, d| acc * d);
            prop_assert_eq!(product, BigInt::from(det));
        }
    }

    #[test]
    fn smith_factorization(m in matrix(4, 3)) {
        prop_assume!(!m.is_empty());
        let a = to_big(&m);
        let s = smith(&a, 3);
        let d = mul(&mul(&s.left, &a), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < s.diagonal.len() { s.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &expected);
            }
        }
        for w in s.diagonal.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn saturation_contains_the_lattice_with_its_index(m in matrix(3, 3)) {
        let l = hnf(3, &rows_of(&m)).unwrap();
        let (sat, index) = l.saturation();
        prop_assert!(sat.contains_lattice(&l));
        prop_assert_eq!(sat.rank(), l.rank());
        prop_assert!(sat.quotient_invariants().torsion.is_empty());
        let torsion = l.quotient_invariants().torsion.iter().fold(BigInt::one(), |acc, d| acc * d);
        prop_assert_eq!(index, torsion);
    }

    #[test]
    fn orthogonal_complement_is_orthogonal_and_complementary(m in matrix(3, 4)) {
        let l = hnf(4, &rows_of(&m)).unwrap();
        let perp = l.orthogonal_complement();
        prop_assert_eq!(perp.rank() + l.rank(), 4);
        for a in perp.basis() {
            for b in l.basis() {
                prop_assert!(a.dot(b).is_zero());
            }
        }
        prop_assert_eq!(perp.orthogonal_complement(), l.saturation().0);
    }

    #[test]
    fn integer_coordinates_round_trip(m in matrix(3, 3), x in prop::collection::vec(-8i64..=8, 3)) {
        let l = hnf(3, &rows_of(&m)).unwrap();
        let x = IntVector::from_i64s(&x);
        match l.integer_coordinates(&x) {
            Some(c) => prop_assert_eq!(l.combine(&c), x),
            None => prop_assert!(!l.contains(&x)),
        }
    }
}

#[test]
fn full_and_zero_lattices() {
    assert!(Lattice::full(3).is_full());
    assert_eq!(Lattice::zero(3).quotient_invariants().free_rank, 3);
}
