//! Double description (Motzkin's incremental method) with exact integer
//! arithmetic and the algebraic adjacency test.

use num_traits::{Signed, Zero};

use crate::linalg::{rank, IntVector};

/// Generators of `{x ∈ ℝⁿ : ⟨a, x⟩ ≥ 0 for every a in constraints}`.
///
/// Returns `(rays, lineality)`: the cone is `cone(rays) + span(lineality)`.
/// Rays are primitive and extreme modulo the lineality space; the lineality
/// vectors are linearly independent.
pub fn extreme_generators(n: usize, constraints: &[IntVector]) -> (Vec<IntVector>, Vec<IntVector>) {
    let mut lineality: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<IntVector> = Vec::new();

    for a in constraints {
        if a.is_zero() {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.remove(k);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = -&l;
                al = -al;
            }
            // Shift everything else into the hyperplane ⟨a, ·⟩ = 0 along l.
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let c = a.dot(v);
                if !c.is_zero() {
                    *v = (&v.scale(&al) - &l.scale(&c)).primitive();
                }
            }
            rays.push(l.primitive());
        } else {
            let values: Vec<_> = rays.iter().map(|r| a.dot(r)).collect();
            let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let target_rank = (n - lineality.len()).saturating_sub(2);

            let mut next: Vec<IntVector> = (0..rays.len())
                .filter(|&i| !values[i].is_negative())
                .map(|i| rays[i].clone())
                .collect();
            for &p in &positive {
                for &q in &negative {
                    let common: Vec<IntVector> = processed
                        .iter()
                        .filter(|c| c.dot(&rays[p]).is_zero() && c.dot(&rays[q]).is_zero())
                        .cloned()
                        .collect();
                    if common.len() < target_rank || rank(n, &common) != target_rank {
                        continue;
                    }
                    // ⟨a,p⟩·q − ⟨a,q⟩·p lies on the hyperplane.
                    let combo = &rays[q].scale(&values[p]) - &rays[p].scale(&values[q]);
                    next.push(combo.primitive());
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a.clone());
    }
    (rays, lineality)
}
