//! Input documents, reports and DOT output.
//!
//! Input schema (JSON):
//!
//! ```json
//! {"ambient_rank": 2, "kind": "generators", "generators": [[2, 0], [0, 1], [1, 1]]}
//! {"ambient_rank": 3, "kind": "tower", "normal": [0, 0, 1],
//!  "inner": {"ambient_rank": 2, "kind": "generators", "generators": [[1, 0], [0, 1]]}}
//! ```
//!
//! Integers may be JSON numbers or decimal strings; anything beyond 53 bits
//! is written back as a string. A report produced by [`json_report`] is
//! itself accepted as input (its `input` member is used).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error as ThisError;

use crate::cone::Cone;
use crate::linalg::IntVector;
use crate::semigroup::{SemigroupSpec, SpectrumAtlas};
use crate::spectrum::Character;

#[derive(Debug, ThisError, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

const NON_POLYHEDRAL: &str = "only semigroups with a polyhedral asymptotic cone are supported; \
     a light-cone semigroup has infinitely many faces and cannot be analyzed";
const NON_INTEGRAL: &str = "only integer data is supported; halfspaces with an irrational \
     slope such as {(p,q) : p + q·α > 0} are outside the supported class";

fn schema(field: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema { field: field.to_string(), message: message.into() }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

pub fn parse_document(text: &str) -> Result<SemigroupSpec, DocumentError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_value(&value)
}

/// Accepts an input document or a JSON report wrapping one.
pub fn parse_value(value: &Value) -> Result<SemigroupSpec, DocumentError> {
    match value.get("input") {
        Some(inner) => parse_spec(inner, "input"),
        None => parse_spec(value, ""),
    }
}

fn parse_integer(value: &Value, field: &str) -> Result<BigInt, DocumentError> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(DocumentError::Unsupported(format!("`{field}` = {n}: {NON_INTEGRAL}")))
            }
        }
        Value::String(s) => {
            let t = s.trim();
            if let Ok(i) = t.parse::<BigInt>() {
                Ok(i)
            } else if t.parse::<f64>().is_ok() || t.contains('/') {
                Err(DocumentError::Unsupported(format!("`{field}` = {s:?}: {NON_INTEGRAL}")))
            } else {
                Err(schema(field, format!("{s:?} is not an integer")))
            }
        }
        other => Err(schema(field, format!("expected an integer, found {}", kind_of(other)))),
    }
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn parse_vector(value: &Value, field: &str, n: usize) -> Result<IntVector, DocumentError> {
    let items = value
        .as_array()
        .ok_or_else(|| schema(field, format!("expected an array of {n} integers, found {}", kind_of(value))))?;
    if items.len() != n {
        return Err(schema(field, format!("expected {n} entries, found {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| parse_integer(v, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map(IntVector)
}

fn parse_spec(value: &Value, prefix: &str) -> Result<SemigroupSpec, DocumentError> {
    let obj = value.as_object().ok_or_else(|| {
        schema(if prefix.is_empty() { "<root>" } else { prefix }, format!("expected an object, found {}", kind_of(value)))
    })?;
    let field = |k: &str| join(prefix, k);
    let kind = obj
        .get("kind")
        .ok_or_else(|| schema(&field("kind"), "missing"))?
        .as_str()
        .ok_or_else(|| schema(&field("kind"), "expected a string"))?;
    let allowed: &[&str] = match kind {
        "generators" => &["ambient_rank", "kind", "generators", "comment"],
        "tower" => &["ambient_rank", "kind", "normal", "inner", "comment"],
        "light-cone" | "quadratic-cone" | "round-cone" => {
            return Err(DocumentError::Unsupported(format!("kind {kind:?}: {NON_POLYHEDRAL}")))
        }
        "irrational-halfspace" => return Err(DocumentError::Unsupported(format!("kind {kind:?}: {NON_INTEGRAL}"))),
        other => {
            return Err(schema(&field("kind"), format!("unknown kind {other:?}; expected \"generators\" or \"tower\"")))
        }
    };
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema(&field(k), format!("unexpected field for kind {kind:?}")));
    }
    let n_value = obj.get("ambient_rank").ok_or_else(|| schema(&field("ambient_rank"), "missing"))?;
    let n = parse_integer(n_value, &field("ambient_rank"))?
        .to_usize()
        .ok_or_else(|| schema(&field("ambient_rank"), "expected a nonnegative integer"))?;
    match kind {
        "generators" => {
            let list = obj.get("generators").ok_or_else(|| schema(&field("generators"), "missing"))?;
            let items = list.as_array().ok_or_else(|| schema(&field("generators"), "expected an array"))?;
            let gens = items
                .iter()
                .enumerate()
                .map(|(i, g)| parse_vector(g, &format!("{}[{i}]", field("generators")), n))
                .collect::<Result<Vec<_>, _>>()?;
            SemigroupSpec::generators(n, gens).map_err(|e| schema(&field("generators"), e.to_string()))
        }
        _ => {
            if n == 0 {
                return Err(schema(&field("ambient_rank"), "a tower needs ambient rank at least 1"));
            }
            let normal = parse_vector(
                obj.get("normal").ok_or_else(|| schema(&field("normal"), "missing"))?,
                &field("normal"),
                n,
            )?;
            if normal.is_zero() || !normal.content().is_one() {
                return Err(schema(&field("normal"), format!("{normal} must be primitive and nonzero")));
            }
            let inner_value = obj.get("inner").ok_or_else(|| schema(&field("inner"), "missing"))?;
            let inner = parse_spec(inner_value, &field("inner"))?;
            if inner.ambient_rank() + 1 != n {
                return Err(schema(
                    &join(&field("inner"), "ambient_rank"),
                    format!("must be {} (one less than the outer rank)", n - 1),
                ));
            }
            SemigroupSpec::tower(n, normal, inner).map_err(|e| schema(&field("normal"), e.to_string()))
        }
    }
}

/// A JSON integer when it is exactly representable as a double, a string otherwise.
pub fn int_value(x: &BigInt) -> Value {
    const SAFE: i64 = (1 << 53) - 1;
    match x.to_i64() {
        Some(i) if i.abs() <= SAFE => json!(i),
        _ => Value::String(x.to_string()),
    }
}

fn vector_value(v: &IntVector) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn vectors_value(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(vector_value).collect())
}

fn rationals_value(qs: &[BigRational]) -> Value {
    Value::Array(qs.iter().map(|q| Value::String(q.to_string())).collect())
}

/// The input document for a spec.
pub fn spec_to_json(spec: &SemigroupSpec) -> Value {
    match spec {
        SemigroupSpec::Generators { ambient_rank, generators } => json!({
            "ambient_rank": ambient_rank,
            "kind": "generators",
            "generators": vectors_value(generators),
        }),
        SemigroupSpec::Tower { ambient_rank, normal, inner } => json!({
            "ambient_rank": ambient_rank,
            "kind": "tower",
            "normal": vector_value(normal),
            "inner": spec_to_json(inner),
        }),
    }
}

fn cone_value(c: &Cone) -> Value {
    json!({
        "dim": c.dim(),
        "pointed": c.is_pointed(),
        "rays": vectors_value(c.rays()),
        "lineality": vectors_value(c.lineality().basis()),
        "inequalities": vectors_value(c.inequalities()),
        "equations": vectors_value(c.equations().basis()),
    })
}

pub fn character_to_json(chi: &Character) -> Value {
    json!({
        "face": chi.face_id,
        "theta": rationals_value(&chi.theta),
        "lambda": rationals_value(&chi.lambda),
    })
}

/// The machine-readable report.
pub fn json_report(atlas: &SpectrumAtlas) -> Value {
    let faces: Vec<Value> = atlas
        .faces
        .iter()
        .map(|f| {
            let mut m = Map::new();
            m.insert("id".into(), json!(f.id()));
            m.insert("dim".into(), json!(f.dim()));
            m.insert("rank".into(), json!(f.rank()));
            m.insert("tight_facets".into(), json!(f.handle.tight_set));
            m.insert("rays".into(), vectors_value(f.cone.rays()));
            m.insert("lineality".into(), vectors_value(f.cone.lineality().basis()));
            m.insert("lattice_basis".into(), vectors_value(f.lattice.basis()));
            m.insert("torsion".into(), Value::Array(f.torsion.iter().map(int_value).collect()));
            m.insert("dual_cone_rays".into(), vectors_value(f.dual_cone_local.rays()));
            m.insert("dual_cone_lineality".into(), vectors_value(f.dual_cone_local.lineality().basis()));
            if atlas.spec.generator_list().is_some() {
                m.insert("member_generators".into(), vectors_value(&f.member_generators));
            }
            Value::Object(m)
        })
        .collect();
    let sdata = atlas.validate_sdata();
    json!({
        "input": spec_to_json(&atlas.spec),
        "ambient_rank": atlas.ambient_rank(),
        "antisymmetric": atlas.antisymmetric,
        "separating": atlas.separating,
        "zero_face": atlas.zero_face(),
        "least_face": atlas.least_face(),
        "expansion_rounds": atlas.expansion_rounds,
        "asymptotic_cone": cone_value(&atlas.ambient_cone),
        "faces": faces,
        "hasse": atlas.hasse.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "sdata": {
            "pairs_checked": sdata.pairs_checked,
            "violations": sdata.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        },
    })
}

/// [`json_report`] pretty-printed, newline terminated.
pub fn json_report_text(atlas: &SpectrumAtlas) -> String {
    let mut text = serde_json::to_string_pretty(&json_report(atlas)).expect("reports serialize");
    text.push('\n');
    text
}

fn list(vs: &[IntVector]) -> String {
    if vs.is_empty() {
        "none".to_string()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn torsion_list(t: &[BigInt]) -> String {
    format!("[{}]", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Describes `ℤⁿ/Γ` by its torsion part, the component group of the face.
fn component_group(t: &[BigInt]) -> String {
    if t.is_empty() {
        "connected".to_string()
    } else {
        format!("component group {}", t.iter().map(|x| format!("ℤ/{x}")).collect::<Vec<_>>().join(" × "))
    }
}

/// The human-readable report.
pub fn text_report(atlas: &SpectrumAtlas) -> String {
    let mut out = String::new();
    let c = &atlas.ambient_cone;
    let zero = atlas.zero_face().map_or("none".to_string(), |f| format!("face {f}"));
    let _ = writeln!(out, "ambient rank: {}", atlas.ambient_rank());
    let _ = writeln!(out, "antisymmetric: {}; zero element: {zero}", atlas.antisymmetric);
    let _ = writeln!(out, "separating: {}", atlas.separating);
    let _ = writeln!(out, "asymptotic cone: dim {}, {}", c.dim(), if c.is_pointed() { "pointed" } else { "not pointed" });
    let _ = writeln!(out, "  rays: {}", list(c.rays()));
    let _ = writeln!(out, "  lineality: {}", list(c.lineality().basis()));
    let _ = writeln!(out, "  inequalities: {}", list(c.inequalities()));
    let _ = writeln!(out, "  equations: {}", list(c.equations().basis()));
    let _ = writeln!(out, "faces: {}", atlas.faces.len());
    for f in &atlas.faces {
        let _ = writeln!(out, "face {} torsion {} ({})", f.id(), torsion_list(&f.torsion), component_group(&f.torsion));
        let _ = writeln!(out, "  dim {}, rank {}", f.dim(), f.rank());
        let _ = writeln!(out, "  rays: {}", list(f.cone.rays()));
        if !f.cone.lineality().basis().is_empty() {
            let _ = writeln!(out, "  lineality: {}", list(f.cone.lineality().basis()));
        }
        let _ = writeln!(out, "  group basis: {}", list(f.lattice.basis()));
        let _ = writeln!(out, "  dual cone rays: {}", list(f.dual_cone_local.rays()));
        if !f.dual_cone_local.lineality().basis().is_empty() {
            let _ = writeln!(out, "  dual cone lineality: {}", list(f.dual_cone_local.lineality().basis()));
        }
    }
    let covers: Vec<String> = atlas.hasse.iter().map(|(a, b)| format!("{a}>{b}")).collect();
    let _ = writeln!(out, "hasse covers: {}", if covers.is_empty() { "none".to_string() } else { covers.join(" ") });
    let _ = writeln!(out, "least idempotent: face {}", atlas.least_face());
    let sdata = atlas.validate_sdata();
    if sdata.holds() {
        let _ = writeln!(out, "conditions A-C: hold ({} pairs)", sdata.pairs_checked);
    } else {
        for v in &sdata.violations {
            let _ = writeln!(out, "conditions A-C: {v}");
        }
    }
    out
}

/// The Hasse diagram of the idempotents in DOT format.
pub fn dot(atlas: &SpectrumAtlas) -> String {
    let mut out = String::from("digraph idempotents {\n");
    for f in &atlas.faces {
        let _ = writeln!(
            out,
            "  f{} [label=\"dim={} rank={} torsion={}\"];",
            f.id(),
            f.dim(),
            f.rank(),
            torsion_list(&f.torsion)
        );
    }
    for (a, b) in &atlas.hasse {
        let _ = writeln!(out, "  f{a} -> f{b};");
    }
    out.push_str("}\n");
    out
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    let t = token.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}

/// Parses a comma-separated list of rationals (possibly empty).
pub fn parse_rationals(list: &str) -> Option<Vec<BigRational>> {
    if list.trim().is_empty() {
        return Some(Vec::new());
    }
    list.split(',').map(parse_rational).collect()
}

/// The raw parts of a character given as `face:<id> theta:<q,…> lambda:<q,…>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterArgs {
    pub face: usize,
    pub theta: Vec<BigRational>,
    pub lambda: Vec<BigRational>,
}

/// Reads one character from the front of `tokens`; the error names the offending token.
pub fn parse_character_tokens(tokens: &[String]) -> Result<(CharacterArgs, &[String]), String> {
    let take = |i: usize, key: &str| -> Result<&str, String> {
        let tok = tokens.get(i).ok_or_else(|| format!("missing `{key}:` token"))?;
        tok.strip_prefix(key).and_then(|r| r.strip_prefix(':')).ok_or_else(|| tok.clone())
    };
    let face_str = take(0, "face")?;
    let face = face_str.trim().parse().map_err(|_| tokens[0].clone())?;
    let theta = parse_rationals(take(1, "theta")?).ok_or_else(|| tokens[1].clone())?;
    let lambda = parse_rationals(take(2, "lambda")?).ok_or_else(|| tokens[2].clone())?;
    Ok((CharacterArgs { face, theta, lambda }, &tokens[3..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::enumerate_faces;

    const EVEN_AXIS: &str = r#"{"ambient_rank": 2, "kind": "generators", "generators": [[2, 0], [0, 1], [1, 1]]}"#;

    #[test]
    fn parses_and_round_trips() {
        let spec = parse_document(EVEN_AXIS).unwrap();
        assert_eq!(spec, SemigroupSpec::from_i64s(2, &[&[2, 0], &[0, 1], &[1, 1]]).unwrap());
        let atlas = enumerate_faces(&spec).unwrap();
        let report = json_report(&atlas);
        let again = parse_value(&report).unwrap();
        assert_eq!(json_report(&enumerate_faces(&again).unwrap()), report);
    }

    #[test]
    fn report_text() {
        let atlas = enumerate_faces(&parse_document(EVEN_AXIS).unwrap()).unwrap();
        let text = text_report(&atlas);
        assert!(text.contains("faces: 4"));
        assert!(text.contains("face 1 torsion [2] (component group ℤ/2)"));
        let z = enumerate_faces(&SemigroupSpec::from_i64s(1, &[&[1], &[-1]]).unwrap()).unwrap();
        assert!(text_report(&z).contains("antisymmetric: false; zero element: none"));
    }

    #[test]
    fn dot_output() {
        let atlas = enumerate_faces(&parse_document(EVEN_AXIS).unwrap()).unwrap();
        let d = dot(&atlas);
        assert!(d.starts_with("digraph idempotents {\n"));
        assert!(d.contains("  f1 [label=\"dim=1 rank=1 torsion=[2]\"];"));
        assert_eq!(d.matches(" -> ").count(), 4);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let e = parse_document(r#"{"ambient_rank": 2, "kind": "generators", "generators": [[1, 0], [1]]}"#);
        assert!(matches!(e, Err(DocumentError::Schema { ref field, .. }) if field == "generators[1]"));
        let e = parse_document(r#"{"ambient_rank": 3, "kind": "tower", "normal": [0, 0, 2],
            "inner": {"ambient_rank": 2, "kind": "generators", "generators": []}}"#);
        assert!(matches!(e, Err(DocumentError::Schema { ref field, .. }) if field == "normal"));
        let e = parse_document("{\n  \"ambient_rank\": 2,\n  oops\n}");
        assert!(matches!(e, Err(DocumentError::Syntax { line: 3, .. })));
    }

    #[test]
    fn rejected_classes() {
        let e = parse_document(r#"{"ambient_rank": 3, "kind": "light-cone"}"#);
        assert!(matches!(e, Err(DocumentError::Unsupported(_))));
        let e = parse_document(r#"{"ambient_rank": 2, "kind": "generators", "generators": [[1.5, 0]]}"#);
        assert!(matches!(e, Err(DocumentError::Unsupported(_))));
    }

    #[test]
    fn big_integers_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&big), Value::String(big.to_string()));
        assert_eq!(int_value(&BigInt::from(-5)), json!(-5));
        let doc = r#"{"ambient_rank": 1, "kind": "generators", "generators": [["123456789012345678901234567890"]]}"#;
        let spec = parse_document(doc).unwrap();
        assert_eq!(spec_to_json(&spec)["generators"][0][0], Value::String(big.to_string()));
    }

    #[test]
    fn character_tokens() {
        let toks: Vec<String> = ["face:0", "theta:1/4,-1/2", "lambda:1", "5"].iter().map(|s| s.to_string()).collect();
        let (c, rest) = parse_character_tokens(&toks).unwrap();
        assert_eq!(c.face, 0);
        assert_eq!(c.theta.len(), 2);
        assert_eq!(rest, &toks[3..]);
        let bad: Vec<String> = ["face:0", "theta:1/x", "lambda:1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_character_tokens(&bad).unwrap_err(), "theta:1/x");
        let empty: Vec<String> = ["face:3", "theta:", "lambda:"].iter().map(|s| s.to_string()).collect();
        assert!(parse_character_tokens(&empty).unwrap().0.theta.is_empty());
    }
}
