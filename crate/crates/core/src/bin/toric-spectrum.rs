use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use toric_spectrum::linalg::IntVector;
use toric_spectrum::report::{self, DocumentError};
use toric_spectrum::semigroup::{enumerate_faces, SpectrumAtlas};
use toric_spectrum::spectrum::Character;
use toric_spectrum::verifier::{self, BoxSpec};
use toric_spectrum::Error;

const DEFAULT_BOX: i64 = 6;
const BOX_VAR: &str = "TORIC_SPECTRUM_BOX";

#[derive(Parser)]
#[command(name = "toric-spectrum", version, about = "Faces, lattice groups and characters of semigroups in Z^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the face atlas of a semigroup.
    Analyze {
        /// Input document (`-` for stdin).
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the Hasse diagram of the idempotents as DOT.
    Dot { file: PathBuf },
    /// Test x ∈ S.
    Member {
        file: PathBuf,
        #[arg(required = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Test membership in the hull of S.
    HullMember {
        file: PathBuf,
        #[arg(required = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Character arithmetic; characters are written `face:<id> theta:<q,..> lambda:<q,..>`.
    Char {
        #[command(subcommand)]
        op: CharOp,
    },
    /// One-parameter semigroups of characters.
    Ray {
        #[command(subcommand)]
        op: RayOp,
    },
    /// A chain of rays joining two comparable idempotents.
    Chain {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum CharOp {
    /// Product of two characters.
    Mul {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Unitary and radial parts.
    Polar {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Value at a point of S: the character followed by the point.
    Eval {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// The adjoint character.
    Conj {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Idempotent, symmetric, nonnegative and open-part flags.
    Classify {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
}

#[derive(Subcommand)]
enum RayOp {
    /// The face reached as t → ∞.
    Limit {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        base: usize,
        /// Comma-separated rationals in the coordinates of the base face group.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Compare the atlas with brute-force oracles on a box.
    Verify {
        file: PathBuf,
        /// Box radius (default: $TORIC_SPECTRUM_BOX or 6).
        #[arg(long = "box")]
        radius: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

enum Failure {
    Input(String),
    Unsupported(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::Indeterminate { .. } => Failure::Unsupported(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Unsupported(_) => Failure::Unsupported(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(path: &Path) -> Result<SpectrumAtlas, Failure> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let spec = report::parse_document(&text).map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(enumerate_faces(&spec)?)
}

fn parse_point(tokens: &[String], n: usize) -> Result<IntVector, Failure> {
    // Accept both `1 0` and `1,0`.
    let parts: Vec<&str> = tokens.iter().flat_map(|t| t.split(',')).filter(|s| !s.is_empty()).collect();
    let coords = parts
        .iter()
        .map(|p| p.trim().parse::<BigInt>().map_err(|_| Failure::Input(format!("malformed integer `{p}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != n {
        return Err(Failure::Input(format!("expected {n} coordinates, got {}", coords.len())));
    }
    Ok(IntVector(coords))
}

fn take_character<'a>(atlas: &SpectrumAtlas, tokens: &'a [String]) -> Result<(Character, &'a [String]), Failure> {
    let (args, rest) = report::parse_character_tokens(tokens)
        .map_err(|tok| Failure::Input(format!("malformed character data: `{tok}`")))?;
    Ok((atlas.character(args.face, args.theta, args.lambda)?, rest))
}

fn no_extra(rest: &[String]) -> Result<(), Failure> {
    match rest.first() {
        Some(t) => Err(Failure::Input(format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

fn run_char(op: CharOp) -> Outcome {
    match op {
        CharOp::Mul { file, tokens } => {
            let atlas = load(&file)?;
            let (a, rest) = take_character(&atlas, &tokens)?;
            let (b, rest) = take_character(&atlas, rest)?;
            no_extra(rest)?;
            Ok(format!("{}\n", atlas.multiply(&a, &b)?))
        }
        CharOp::Polar { file, tokens } => {
            let atlas = load(&file)?;
            let (chi, rest) = take_character(&atlas, &tokens)?;
            no_extra(rest)?;
            let (unitary, radial) = atlas.polar_decompose(&chi)?;
            Ok(format!("unitary: {unitary}\nradial: {radial}\n"))
        }
        CharOp::Eval { file, tokens } => {
            let atlas = load(&file)?;
            let (chi, rest) = take_character(&atlas, &tokens)?;
            let x = parse_point(rest, atlas.ambient_rank())?;
            Ok(format!("{}\n", atlas.evaluate(&chi, &x)?))
        }
        CharOp::Conj { file, tokens } => {
            let atlas = load(&file)?;
            let (chi, rest) = take_character(&atlas, &tokens)?;
            no_extra(rest)?;
            Ok(format!("{}\n", atlas.involute(&chi)?))
        }
        CharOp::Classify { file, tokens } => {
            let atlas = load(&file)?;
            let (chi, rest) = take_character(&atlas, &tokens)?;
            no_extra(rest)?;
            let c = atlas.classify(&chi)?;
            Ok(format!(
                "idempotent: {}\nsymmetric: {}\nnonnegative: {}\nopen part: {}\n",
                c.is_idempotent, c.is_symmetric, c.is_nonnegative, c.in_se
            ))
        }
    }
}

fn box_radius(flag: Option<i64>) -> Result<BoxSpec, Failure> {
    let radius = match flag {
        Some(r) => r,
        None => match std::env::var(BOX_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("{BOX_VAR}={v:?} is not an integer")))?,
            Err(_) => DEFAULT_BOX,
        },
    };
    Ok(BoxSpec::new(radius)?)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agree"
    } else {
        "DISAGREE"
    }
}

fn run_oracle(file: &Path, radius: Option<i64>, seed: u64, trials: usize) -> Outcome {
    let atlas = load(file)?;
    let window = box_radius(radius)?;
    let mut out = format!("box radius: {}\n", window.radius());
    let mut failed = false;
    let mut unsupported = None;
    match verifier::compare_faces(&atlas, window) {
        Ok(r) => {
            failed |= !r.agrees();
            out.push_str(&format!("members in box: {}\n", r.box_points));
            out.push_str(&format!("membership: {}\n", verdict(r.membership_mismatches.is_empty())));
            out.push_str(&format!(
                "faces: oracle {}, atlas {}: {}\n",
                r.oracle.len(),
                r.atlas.len(),
                verdict(r.oracle == r.atlas)
            ));
        }
        Err(Error::Unsupported(m)) => {
            out.push_str(&format!("faces: skipped ({m})\n"));
            unsupported = Some(m);
        }
        Err(e) => return Err(e.into()),
    }
    let cone_box = BoxSpec::new(window.radius().min(3))?;
    let mut cones = vec![&atlas.ambient_cone];
    for f in &atlas.faces {
        cones.push(&f.cone);
        cones.push(&f.dual_cone_local);
    }
    let mut cones_ok = true;
    for c in &cones {
        cones_ok &= verifier::dd_cross_check(c, cone_box)?.agrees();
    }
    failed |= !cones_ok;
    out.push_str(&format!("cones: {} checked on radius {}: {}\n", cones.len(), cone_box.radius(), verdict(cones_ok)));
    let h = verifier::numeric_homomorphism_check(&atlas, trials, seed)?;
    let ok = h.exact_mismatches == 0 && h.max_deviation <= 1e-9;
    failed |= !ok;
    out.push_str(&format!(
        "homomorphism: {} trials, seed {seed}, exact mismatches {}, max deviation {:.3e}: {}\n",
        h.trials,
        h.exact_mismatches,
        h.max_deviation,
        verdict(ok)
    ));
    if failed {
        print!("{out}");
        return Err(Failure::Internal("oracle disagreement".into()));
    }
    if let Some(m) = unsupported {
        print!("{out}");
        return Err(Failure::Unsupported(m));
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, json } => {
            let atlas = load(&file)?;
            let sdata = atlas.validate_sdata();
            if !sdata.holds() {
                return Err(Failure::Internal(format!("{}", sdata.violations[0])));
            }
            if json {
                Ok(report::json_report_text(&atlas))
            } else {
                Ok(report::text_report(&atlas))
            }
        }
        Command::Dot { file } => Ok(report::dot(&load(&file)?)),
        Command::Member { file, point } => {
            let atlas = load(&file)?;
            let x = parse_point(&point, atlas.ambient_rank())?;
            Ok(format!("{}\n", atlas.contains(&x)?))
        }
        Command::HullMember { file, point } => {
            let atlas = load(&file)?;
            let x = parse_point(&point, atlas.ambient_rank())?;
            Ok(format!("{}\n", atlas.hull_contains(&x)?))
        }
        Command::Char { op } => run_char(op),
        Command::Ray { op: RayOp::Limit { file, base, lambda } } => {
            let atlas = load(&file)?;
            let lambda = report::parse_rationals(&lambda)
                .ok_or_else(|| Failure::Input(format!("malformed lambda `{lambda}`")))?;
            let ray = atlas.ray(base, lambda)?;
            Ok(format!("limit: face {}\n", atlas.ray_limit(&ray)?))
        }
        Command::Chain { file, from, to } => {
            let atlas = load(&file)?;
            let chain = atlas.chain_of_rays(from, to)?;
            let mut out = format!("chain from face {from} to face {to}: {} rays\n", chain.len());
            for (i, r) in chain.iter().enumerate() {
                out.push_str(&format!("ray {}: {r} -> face {}\n", i + 1, atlas.ray_limit(r)?));
            }
            Ok(out)
        }
        Command::Oracle { op: OracleOp::Verify { file, radius, seed, trials } } => {
            run_oracle(&file, radius, seed, trials)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
