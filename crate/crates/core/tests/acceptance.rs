//! The acceptance suite: one line per criterion, all must pass.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_spectrum::cone::{dual_cone, Cone};
use toric_spectrum::report;
use toric_spectrum::semigroup::{self, enumerate_faces, SemigroupSpec, SpectrumAtlas};
use toric_spectrum::spectrum::ExactValue;
use toric_spectrum::verifier::{self, BoxSpec};

use common::{fixture, random_spec, spec_json, v, FIXTURES};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn atlas(name: &str) -> SpectrumAtlas {
    enumerate_faces(&fixture(name)).unwrap()
}

/// The 200 seeded specs shared by criteria 4, 5 and 9.
fn random_specs() -> Vec<SemigroupSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..200).map(|_| random_spec(&mut rng, 4, 8, 3)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a = atlas("even_axis");
    let elapsed = start.elapsed();
    ensure(a.faces.len() == 4, || format!("{} faces", a.faces.len()))?;
    let x_axis = a
        .faces
        .iter()
        .find(|f| f.cone.rays() == [v(&[1, 0])])
        .ok_or("no x-axis face")?;
    ensure(x_axis.torsion == vec![BigInt::from(2)], || format!("x-axis torsion {:?}", x_axis.torsion))?;
    ensure(a.hasse.len() == 4, || format!("{} cover edges", a.hasse.len()))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("4 faces, x-axis torsion [2], 4 covers, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let a = atlas("halfspace_tower");
    let mut dims: Vec<usize> = a.faces.iter().map(|f| f.dim()).collect();
    dims.sort_unstable_by(|x, y| y.cmp(x));
    ensure(dims == [3, 2, 1, 1, 0], || format!("dims {dims:?}"))?;
    let top = a.face(0).unwrap();
    // Sum of the dual rays lies in the relative interior of the dual cone.
    let mut lambda = vec![BigRational::zero(); top.rank()];
    for r in top.dual_cone_local.rays() {
        for (l, c) in lambda.iter_mut().zip(r.iter()) {
            *l += BigRational::from_integer(c.clone());
        }
    }
    let chi = a.character(0, vec![BigRational::zero(); top.rank()], lambda).map_err(|e| e.to_string())?;
    let open = a.classify(&chi).map_err(|e| e.to_string())?;
    ensure(open.in_se, || "interior character not in the open part".into())?;
    let quadrant = a.faces.iter().find(|f| f.dim() == 2).ok_or("no quadrant face")?.id();
    let k = a.classify(&a.idempotent(quadrant).unwrap()).map_err(|e| e.to_string())?;
    ensure(!k.in_se, || "quadrant idempotent in the open part".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("5 faces with dims {dims:?}, openness consistent, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let a = atlas("two_three");
    for x in -10..=10 {
        let hull = a.hull_contains(&v(&[x])).map_err(|e| e.to_string())?;
        ensure(hull == (x >= 0), || format!("hull_contains({x}) = {hull}"))?;
    }
    let b = atlas("even_axis");
    let mut checked = 0;
    for p in -8..=8 {
        for q in -8..=8 {
            let x = v(&[p, q]);
            let (h, c) = (b.hull_contains(&x).unwrap(), b.contains(&x).unwrap());
            ensure(h == c, || format!("({p},{q}): hull {h}, member {c}"))?;
            checked += 1;
        }
    }
    Ok(format!("hull of {{2,3}} is ℕ on [-10,10]; hull = S on {checked} points"))
}

fn criterion_4(specs: &[SemigroupSpec]) -> Outcome {
    let start = Instant::now();
    let mut antisymmetric = 0;
    for spec in specs {
        let a = enumerate_faces(spec).map_err(|e| format!("{e} for {}", spec_json(spec)))?;
        let direct = semigroup::is_antisymmetric(spec).map_err(|e| e.to_string())?;
        let pointed = a.ambient_cone.is_pointed();
        let zero = a.zero_character().is_some();
        ensure(direct == pointed && pointed == zero && a.antisymmetric == direct, || {
            format!("S∩(−S)={{0}}: {direct}, pointed: {pointed}, zero: {zero} for {}", spec_json(spec))
        })?;
        antisymmetric += direct as usize;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} specs ({antisymmetric} antisymmetric), no failures, {elapsed:.2?}", specs.len()))
}

fn criterion_5(specs: &[SemigroupSpec]) -> Outcome {
    for spec in specs {
        let gens = spec.generator_list().unwrap();
        let cone = Cone::from_generators(spec.ambient_rank(), gens).unwrap();
        let bidual = dual_cone(&dual_cone(&cone));
        let alpha = semigroup::asymptotic_cone(spec).unwrap();
        ensure(alpha == bidual, || format!("bidual differs for {}", spec_json(spec)))?;
    }
    Ok(format!("{} specs, exact equality", specs.len()))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut total = 0;
    for (i, name) in FIXTURES.iter().enumerate() {
        let a = atlas(name);
        let mut rng = ChaCha8Rng::seed_from_u64(600 + i as u64);
        let window = BoxSpec::new(4).unwrap();
        for _ in 0..1000 {
            let c1 = verifier::random_character(&a, &mut rng).map_err(|e| e.to_string())?;
            let c2 = verifier::random_character(&a, &mut rng).map_err(|e| e.to_string())?;
            let x = verifier::random_member(&a, &mut rng, window).map_err(|e| e.to_string())?;
            let product = a.multiply(&c1, &c2).unwrap();
            let (e1, e2) = (a.evaluate(&c1, &x).unwrap(), a.evaluate(&c2, &x).unwrap());
            let joint = a.evaluate(&product, &x).unwrap();
            ensure(joint == e1.mul(&e2), || format!("{name}: ({c1})·({c2}) at {x}"))?;
            let (jr, ji) = joint.to_complex();
            let ((r1, i1), (r2, i2)) = (e1.to_complex(), e2.to_complex());
            worst = worst.max((jr - (r1 * r2 - i1 * i2)).hypot(ji - (r1 * i2 + i1 * r2)));

            let star = a.involute(&c1).unwrap();
            ensure(a.involute(&star).unwrap() == c1, || format!("{name}: involution of {c1}"))?;
            ensure(a.evaluate(&star, &x).unwrap() == e1.conj(), || format!("{name}: adjoint value of {c1}"))?;
            ensure(
                a.involute(&product).unwrap() == a.multiply(&a.involute(&c2).unwrap(), &star).unwrap(),
                || format!("{name}: antiautomorphism on {c1}, {c2}"),
            )?;
            let (unitary, radial) = a.polar_decompose(&c1).unwrap();
            ensure(a.multiply(&unitary, &radial).unwrap() == c1, || format!("{name}: polar roundtrip {c1}"))?;
            let same_modulus = match (a.evaluate(&radial, &x).unwrap(), &e1) {
                (ExactValue::Polar { exponent, .. }, ExactValue::Polar { exponent: e, .. }) => exponent == *e,
                (r, e) => r.is_zero() && e.is_zero(),
            };
            ensure(same_modulus, || format!("{name}: radial part of {c1} changes |χ(x)|"))?;
            total += 1;
        }
    }
    ensure(worst <= 1e-9, || format!("float deviation {worst:e}"))?;
    Ok(format!("{total} triples over {} fixtures, exact; float deviation {worst:.1e}", FIXTURES.len()))
}

fn criterion_7() -> Outcome {
    let window = BoxSpec::new(6).unwrap();
    for name in FIXTURES {
        let report = verifier::compare_faces(&atlas(name), window).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.agrees(), || format!("{name}: oracle {} sets, atlas {}", report.oracle.len(), report.atlas.len()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1e);
    let mut checked = 0;
    while checked < 50 {
        let spec = random_spec(&mut rng, 3, 5, 3);
        let a = enumerate_faces(&spec).unwrap();
        if !a.ambient_cone.is_pointed() {
            continue;
        }
        let report = verifier::compare_faces(&a, window).map_err(|e| format!("{e} for {}", spec_json(&spec)))?;
        ensure(report.agrees(), || format!("oracle mismatch for {}", spec_json(&spec)))?;
        checked += 1;
    }
    Ok(format!("{} fixtures and {checked} random pointed specs agree on box 6", FIXTURES.len()))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    for name in FIXTURES {
        let a = atlas(name);
        for k in 0..a.faces.len() {
            for j in 0..a.faces.len() {
                if !a.le(j, k) {
                    continue;
                }
                let chain = a.chain_of_rays(k, j).map_err(|e| format!("{name} {k}->{j}: {e}"))?;
                let bound = a.faces[k].rank() - a.faces[j].rank();
                ensure(chain.len() <= bound, || format!("{name} {k}->{j}: length {} > {bound}", chain.len()))?;
                let mut at = k;
                for ray in &chain {
                    ensure(ray.base_face_id == at, || format!("{name} {k}->{j}: broken chain"))?;
                    at = a.ray_limit(ray).unwrap();
                }
                ensure(at == j, || format!("{name} {k}->{j}: ends at {at}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} comparable pairs within the rank bound"))
}

fn criterion_9(specs: &[SemigroupSpec]) -> Outcome {
    let mut atlases = 0;
    for name in FIXTURES {
        let r = atlas(name).validate_sdata();
        ensure(r.holds(), || format!("{name}: {}", r.violations[0]))?;
        atlases += 1;
    }
    for spec in specs {
        let r = enumerate_faces(spec).unwrap().validate_sdata();
        ensure(r.holds(), || format!("{} for {}", r.violations[0], spec_json(spec)))?;
        atlases += 1;
    }
    Ok(format!("A, B, C hold on {atlases} atlases"))
}

fn render(name: &str) -> (String, String, String) {
    let a = atlas(name);
    (report::text_report(&a), report::json_report_text(&a), report::dot(&a))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_toric-spectrum");
    for name in FIXTURES {
        let path = common::fixture_path(name);
        for args in [vec!["analyze"], vec!["analyze", "--json"], vec!["dot"]] {
            let run = || Command::new(bin).args(&args).arg(&path).output().unwrap();
            let (first, second) = (run(), run());
            ensure(first.status.success(), || format!("{name}: {args:?} failed"))?;
            ensure(first.stdout == second.stdout, || format!("{name}: {args:?} differs between runs"))?;
        }
        let reference = render(name);
        for threads in [2, 8] {
            let outputs: Vec<_> = (0..threads)
                .map(|_| std::thread::spawn(move || render(name)))
                .collect::<Vec<_>>()
                .into_iter()
                .map(|h| h.join().unwrap())
                .collect();
            ensure(outputs.iter().all(|o| *o == reference), || format!("{name}: differs with {threads} threads"))?;
        }
    }
    Ok(format!("{} fixtures byte-identical across runs and 1/2/8 threads", FIXTURES.len()))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let specs = random_specs();
    let criteria: Vec<(u32, &str, Criterion)> = vec![
        (1, "even-axis example", Box::new(criterion_1)),
        (2, "halfspace tower", Box::new(criterion_2)),
        (3, "hull", Box::new(criterion_3)),
        (4, "antisymmetry equivalence", Box::new(|| criterion_4(&specs))),
        (5, "bidual identity", Box::new(|| criterion_5(&specs))),
        (6, "character algebra", Box::new(criterion_6)),
        (7, "oracle equivalence", Box::new(criterion_7)),
        (8, "chain bound", Box::new(criterion_8)),
        (9, "compatibility conditions", Box::new(|| criterion_9(&specs))),
        (10, "determinism", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, title, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail} [{elapsed:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why} [{elapsed:.1}s]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", criteria.len());
}
