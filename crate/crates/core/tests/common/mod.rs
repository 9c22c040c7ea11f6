#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use toric_spectrum::linalg::IntVector;
use toric_spectrum::report;
use toric_spectrum::semigroup::SemigroupSpec;

/// Fixture files shipped in `fixtures/` (all analyzable).
pub const FIXTURES: &[&str] = &[
    "even_axis",
    "halfspace_tower",
    "two_three",
    "naturals",
    "integers",
    "square_pyramid",
    "strip",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> SemigroupSpec {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    report::parse_document(&text).unwrap()
}

pub fn v(xs: &[i64]) -> IntVector {
    IntVector::from_i64s(xs)
}

/// Generators spec with `n ∈ 1..=max_rank`, up to `max_gens` generators and
/// entries in `[−bound, bound]`.
pub fn random_spec<R: Rng>(rng: &mut R, max_rank: usize, max_gens: usize, bound: i64) -> SemigroupSpec {
    let n = rng.gen_range(1..=max_rank);
    let k = rng.gen_range(0..=max_gens);
    let gens = (0..k)
        .map(|_| IntVector::from_i64s(&(0..n).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>()))
        .collect();
    SemigroupSpec::generators(n, gens).unwrap()
}

/// The spec as a re-runnable input document.
pub fn spec_json(spec: &SemigroupSpec) -> String {
    report::spec_to_json(spec).to_string()
}

/// All lattice points of `[−b, b]ⁿ`.
pub fn box_points(n: usize, b: i64) -> Vec<IntVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|p| IntVector::from_i64s(&p)).collect()
}
