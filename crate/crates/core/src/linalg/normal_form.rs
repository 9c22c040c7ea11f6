//! Hermite and Smith normal forms over ℤ.
//!
//! Matrices are dense `Vec<Vec<BigInt>>` in row-major order. Both routines
//! use plain Euclidean elimination; the matrices that occur here are small
//! (ambient rank at most a handful), so coefficient growth is not a concern.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form of `rows` (all of length `cols`).
///
/// The result is upper echelon with positive pivots and every entry above a
/// pivot reduced into `[0, pivot)`. Zero rows are dropped, so the output is
/// a basis of the row lattice.
pub fn hermite_rows(rows: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let mut m: IntMatrix = rows.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(p) = pivot else { break };
            m.swap(p, r);
            let mut clean = true;
            for i in (r + 1)..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let (head, tail) = m.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if !m[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            let (head, tail) = m.split_at_mut(r);
            sub_scaled(&mut head[i], &tail[0], &q);
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Smith normal form `D = U·A·V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = q * &row[t];
        row[j] -= v;
    }
}

pub fn smith(a: &[Vec<BigInt>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: IntMatrix = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { diagonal, left: u, right: v };
            };
            m.swap(pi, t);
            u.swap(pi, t);
            swap_cols(&mut m, pj, t);
            swap_cols(&mut v, pj, t);

            let mut dirty = false;
            for i in (t + 1)..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (head, tail) = m.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[t], &q);
                let (uh, ut) = u.split_at_mut(i);
                sub_scaled(&mut ut[0], &uh[t], &q);
                dirty |= !m[i][t].is_zero();
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_sub(&mut m, j, t, &q);
                col_sub(&mut v, j, t, &q);
                dirty |= !m[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let offending = ((t + 1)..rows)
                .find(|&i| ((t + 1)..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                    let (uh, ut) = u.split_at_mut(i);
                    for (x, y) in uh[t].iter_mut().zip(&ut[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(m[t][t].clone());
    }
    Smith { diagonal, left: u, right: v }
}

/// Basis (as rows) of the integer kernel `{x ∈ ℤⁿ : A·x = 0}`, where `A` has
/// `cols = n` columns. The kernel of an integer matrix is always saturated.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let s = smith(a, cols);
    let r = s.diagonal.len();
    (r..cols)
        .map(|j| s.right.iter().map(|row| row[j].clone()).collect())
        .collect()
}
