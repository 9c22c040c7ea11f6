//! The character semigroup `Hom(S, 𝔻̄)` of an atlas.
//!
//! A character is stored as a face `P` together with a unitary part `θ` and a
//! radial part `λ`, both written on the Hermite basis `b₁, …, b_r` of `Γ_P`:
//!
//! ```text
//! χ(x) = e^{2πi·Σθᵢcᵢ} · e^{−Σλᵢcᵢ}   if x = Σcᵢbᵢ ∈ P,     χ(x) = 0 otherwise.
//! ```
//!
//! `θ` is reduced mod 1 and `λ` must lie in the dual cone `C^P`, so every
//! character has exactly one representation and equality is structural.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{frac_part, IntVector, RationalVector};
use crate::semigroup::SpectrumAtlas;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub face_id: usize,
    pub theta: Vec<BigRational>,
    pub lambda: Vec<BigRational>,
}

/// An exact point of the closed unit disc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactValue {
    Zero,
    /// `e^{2πi·angle} · e^{−exponent}` with `angle ∈ [0, 1)`, `exponent ≥ 0`.
    Polar { angle: BigRational, exponent: BigRational },
}

/// A one-parameter semigroup `t ↦ κ_base · e^{−tλ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub base_face_id: usize,
    pub lambda: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_idempotent: bool,
    /// `χ* = χ`.
    pub is_symmetric: bool,
    /// Unitary part trivial.
    pub is_nonnegative: bool,
    /// The face is `S` itself.
    pub in_se: bool,
}

impl ExactValue {
    pub fn one() -> Self {
        ExactValue::Polar { angle: BigRational::zero(), exponent: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactValue::Zero)
    }

    pub fn mul(&self, other: &ExactValue) -> ExactValue {
        match (self, other) {
            (
                ExactValue::Polar { angle: a1, exponent: e1 },
                ExactValue::Polar { angle: a2, exponent: e2 },
            ) => ExactValue::Polar { angle: frac_part(&(a1 + a2)), exponent: e1 + e2 },
            _ => ExactValue::Zero,
        }
    }

    pub fn conj(&self) -> ExactValue {
        match self {
            ExactValue::Zero => ExactValue::Zero,
            ExactValue::Polar { angle, exponent } => {
                ExactValue::Polar { angle: frac_part(&-angle), exponent: exponent.clone() }
            }
        }
    }

    /// `(re, im)` in double precision.
    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            ExactValue::Zero => (0.0, 0.0),
            ExactValue::Polar { angle, exponent } => {
                let r = (-exponent.to_f64().unwrap_or(f64::INFINITY)).exp();
                let phi = 2.0 * std::f64::consts::PI * angle.to_f64().unwrap_or(0.0);
                (r * phi.cos(), r * phi.sin())
            }
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Zero => write!(f, "0"),
            ExactValue::Polar { angle, exponent } => {
                // Values below the printed precision would show up as "-0.000…".
                let tidy = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
                let (re, im) = self.to_complex();
                let (re, im) = (tidy(re), tidy(im));
                write!(f, "exp(2πi·{angle})·exp(-{exponent}) ≈ {re:.12} {} {:.12}i", if im < 0.0 { '-' } else { '+' }, im.abs())
            }
        }
    }
}

fn fmt_rationals(f: &mut fmt::Formatter<'_>, qs: &[BigRational]) -> fmt::Result {
    for (i, q) in qs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{q}")?;
    }
    Ok(())
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face:{} theta:", self.face_id)?;
        fmt_rationals(f, &self.theta)?;
        write!(f, " lambda:")?;
        fmt_rationals(f, &self.lambda)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base:{} lambda:", self.base_face_id)?;
        fmt_rationals(f, &self.lambda)
    }
}

fn lincomb(coeffs: &[BigInt], values: &[BigRational]) -> BigRational {
    coeffs
        .iter()
        .zip(values)
        .fold(BigRational::zero(), |acc, (c, v)| acc + v * BigRational::from_integer(c.clone()))
}

impl SpectrumAtlas {
    /// Validates and canonicalizes a character (θ is reduced mod 1).
    pub fn character(
        &self,
        face_id: usize,
        theta: Vec<BigRational>,
        lambda: Vec<BigRational>,
    ) -> Result<Character> {
        let face = self.face(face_id)?;
        let r = face.rank();
        if theta.len() != r || lambda.len() != r {
            return Err(Error::InvalidCharacter(format!(
                "face {face_id} has lattice rank {r}; got {} theta and {} lambda entries",
                theta.len(),
                lambda.len()
            )));
        }
        let lambda_vec = RationalVector(lambda);
        if !face.dual_cone_local.contains_rational(&lambda_vec) {
            return Err(Error::OutsideDualCone(lambda_vec.to_string()));
        }
        Ok(Character {
            face_id,
            theta: theta.iter().map(frac_part).collect(),
            lambda: lambda_vec.0,
        })
    }

    /// The idempotent `κ_P` of a face.
    pub fn idempotent(&self, face_id: usize) -> Result<Character> {
        let r = self.face(face_id)?.rank();
        Ok(Character {
            face_id,
            theta: vec![BigRational::zero(); r],
            lambda: vec![BigRational::zero(); r],
        })
    }

    pub fn identity(&self) -> Character {
        self.idempotent(self.top_face()).expect("top face exists")
    }

    /// The zero element, present exactly when the least face is `{0}`.
    pub fn zero_character(&self) -> Option<Character> {
        self.zero_face().map(|f| self.idempotent(f).expect("face exists"))
    }

    fn check(&self, chi: &Character) -> Result<()> {
        let canonical = self.character(chi.face_id, chi.theta.clone(), chi.lambda.clone())?;
        if canonical != *chi {
            return Err(Error::InvalidCharacter(format!("theta of {chi} is not reduced mod 1")));
        }
        Ok(())
    }

    pub fn evaluate(&self, chi: &Character, x: &IntVector) -> Result<ExactValue> {
        self.check(chi)?;
        if !self.contains(x)? {
            return Err(Error::NotInSemigroup(x.to_string()));
        }
        self.evaluate_member(chi, x)
    }

    /// Evaluation at a point already known to lie in `S`.
    pub(crate) fn evaluate_member(&self, chi: &Character, x: &IntVector) -> Result<ExactValue> {
        let face = self.face(chi.face_id)?;
        if !face.cone.contains(x) {
            return Ok(ExactValue::Zero);
        }
        let coords = face.lattice.integer_coordinates(x).ok_or_else(|| {
            Error::Internal(format!("{x} lies on face {} but not in its lattice", chi.face_id))
        })?;
        let exponent = lincomb(&coords, &chi.lambda);
        if exponent.is_negative() {
            return Err(Error::Internal(format!("negative exponent at {x}")));
        }
        Ok(ExactValue::Polar { angle: frac_part(&lincomb(&coords, &chi.theta)), exponent })
    }

    /// Restriction of `chi` to a face below its own.
    fn restrict(&self, chi: &Character, to: usize) -> Result<Character> {
        if !self.le(to, chi.face_id) {
            return Err(Error::NotComparable { lower: to, upper: chi.face_id });
        }
        let from = self.face(chi.face_id)?;
        let target = self.face(to)?;
        let mut theta = Vec::with_capacity(target.rank());
        let mut lambda = Vec::with_capacity(target.rank());
        for b in target.lattice.basis() {
            let c = from.lattice.integer_coordinates(b).ok_or_else(|| {
                Error::Internal(format!("lattice of face {to} is not inside that of face {}", chi.face_id))
            })?;
            theta.push(frac_part(&lincomb(&c, &chi.theta)));
            lambda.push(lincomb(&c, &chi.lambda));
        }
        Ok(Character { face_id: to, theta, lambda })
    }

    /// Intersection of two faces.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        self.infimum(&[a, b])
    }

    fn infimum(&self, ids: &[usize]) -> Result<usize> {
        let below: Vec<usize> = (0..self.faces.len())
            .filter(|&m| ids.iter().all(|&i| self.le(m, i)))
            .collect();
        below
            .iter()
            .copied()
            .find(|&m| below.iter().all(|&o| self.le(o, m)))
            .ok_or_else(|| Error::Internal(format!("faces {ids:?} have no greatest lower bound")))
    }

    fn supremum(&self, ids: &[usize]) -> Result<usize> {
        let above: Vec<usize> = (0..self.faces.len())
            .filter(|&m| ids.iter().all(|&i| self.le(i, m)))
            .collect();
        above
            .iter()
            .copied()
            .find(|&m| above.iter().all(|&o| self.le(m, o)))
            .ok_or_else(|| Error::Internal(format!("faces {ids:?} have no least upper bound")))
    }

    pub fn multiply(&self, a: &Character, b: &Character) -> Result<Character> {
        self.check(a)?;
        self.check(b)?;
        let m = self.meet(a.face_id, b.face_id)?;
        let ra = self.restrict(a, m)?;
        let rb = self.restrict(b, m)?;
        Ok(Character {
            face_id: m,
            theta: ra.theta.iter().zip(&rb.theta).map(|(x, y)| frac_part(&(x + y))).collect(),
            lambda: ra.lambda.iter().zip(&rb.lambda).map(|(x, y)| x + y).collect(),
        })
    }

    /// The involution `χ ↦ χ*`, pointwise complex conjugation.
    pub fn involute(&self, chi: &Character) -> Result<Character> {
        self.check(chi)?;
        Ok(Character {
            face_id: chi.face_id,
            theta: chi.theta.iter().map(|t| frac_part(&-t)).collect(),
            lambda: chi.lambda.clone(),
        })
    }

    /// Splits `χ = ρ·|χ|` into its unitary and radial parts.
    pub fn polar_decompose(&self, chi: &Character) -> Result<(Character, Character)> {
        self.check(chi)?;
        let zeros = vec![BigRational::zero(); chi.theta.len()];
        Ok((
            Character { face_id: chi.face_id, theta: chi.theta.clone(), lambda: zeros.clone() },
            Character { face_id: chi.face_id, theta: zeros, lambda: chi.lambda.clone() },
        ))
    }

    pub fn ray(&self, base_face_id: usize, lambda: Vec<BigRational>) -> Result<Ray> {
        self.character(base_face_id, vec![BigRational::zero(); lambda.len()], lambda.clone())?;
        Ok(Ray { base_face_id, lambda })
    }

    pub fn ray_point(&self, ray: &Ray, t: &BigRational) -> Result<Character> {
        if t.is_negative() {
            return Err(Error::InvalidCharacter(format!("ray parameter {t} is negative")));
        }
        let lambda = ray.lambda.iter().map(|l| l * t).collect();
        self.character(ray.base_face_id, vec![BigRational::zero(); ray.lambda.len()], lambda)
    }

    /// The face whose idempotent is the limit of the ray as `t → ∞`: the
    /// largest face below the base on which `λ` vanishes.
    pub fn ray_limit(&self, ray: &Ray) -> Result<usize> {
        self.ray(ray.base_face_id, ray.lambda.clone())?;
        let base = self.face(ray.base_face_id)?;
        let lambda = RationalVector(ray.lambda.clone());
        let mut candidates = Vec::new();
        for q in 0..self.faces.len() {
            if !self.le(q, ray.base_face_id) {
                continue;
            }
            let mut vanishes = true;
            for g in self.faces[q].cone.generators() {
                let c = base.lattice.coordinates(&g).ok_or_else(|| {
                    Error::Internal(format!("face {q} leaves the span of face {}", ray.base_face_id))
                })?;
                if !lambda.dot(&c).is_zero() {
                    vanishes = false;
                    break;
                }
            }
            if vanishes {
                candidates.push(q);
            }
        }
        candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&o| self.le(o, m)))
            .ok_or_else(|| Error::Internal(format!("ray {ray} has no limit face")))
    }

    /// `(inf, sup)` of a nonempty set of faces.
    pub fn idempotent_lattice_ops(&self, ids: &[usize]) -> Result<(usize, usize)> {
        if ids.is_empty() {
            return Err(Error::InvalidCharacter("empty set of idempotents".into()));
        }
        for &i in ids {
            self.face(i)?;
        }
        Ok((self.infimum(ids)?, self.supremum(ids)?))
    }

    /// Rays joining `from` down to `to` along covers of the face lattice.
    pub fn chain_of_rays(&self, from: usize, to: usize) -> Result<Vec<Ray>> {
        self.face(from)?;
        self.face(to)?;
        if !self.le(to, from) {
            return Err(Error::NotComparable { lower: to, upper: from });
        }
        let mut chain = Vec::new();
        let mut current = from;
        while current != to {
            let next = self
                .hasse
                .iter()
                .filter(|&&(u, l)| u == current && self.le(to, l))
                .map(|&(_, l)| l)
                .min()
                .ok_or_else(|| Error::Internal(format!("no cover of face {current} above {to}")))?;
            let lambda = self.cutting_functional(current, next)?;
            let ray = Ray { base_face_id: current, lambda };
            let limit = self.ray_limit(&ray)?;
            if limit != next {
                return Err(Error::Internal(format!(
                    "ray from face {current} ends at {limit}, expected {next}"
                )));
            }
            chain.push(ray);
            current = next;
        }
        Ok(chain)
    }

    /// Sum of the facet normals of `C_upper` (in `Γ_upper` coordinates) that
    /// vanish on `C_lower`.
    fn cutting_functional(&self, upper: usize, lower: usize) -> Result<Vec<BigRational>> {
        let up = self.face(upper)?;
        let mut lower_gens = Vec::new();
        for g in self.face(lower)?.cone.generators() {
            lower_gens.push(up.lattice.coordinates(&g).ok_or_else(|| {
                Error::Internal(format!("face {lower} leaves the span of face {upper}"))
            })?);
        }
        let mut sum = IntVector::zeros(up.rank());
        for normal in up.dual_cone_local.rays() {
            let n = normal.to_rational();
            if lower_gens.iter().all(|g| n.dot(g).is_zero()) {
                sum = &sum + normal;
            }
        }
        Ok(sum.to_rational().0)
    }

    pub fn classify(&self, chi: &Character) -> Result<Classification> {
        let is_idempotent = self.multiply(chi, chi)? == *chi;
        let is_symmetric = self.involute(chi)? == *chi;
        let is_nonnegative = chi.theta.iter().all(Zero::is_zero);
        let in_se = chi.face_id == self.top_face();
        // Openness test: nonvanishing at an interior member of S.
        let probe = self.evaluate_member(chi, &self.interior_member())?;
        if in_se == probe.is_zero() {
            return Err(Error::Internal(format!(
                "face test and interior evaluation disagree for {chi}"
            )));
        }
        Ok(Classification { is_idempotent, is_symmetric, is_nonnegative, in_se })
    }
}
