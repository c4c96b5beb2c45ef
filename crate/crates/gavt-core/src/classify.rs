//! Maximal automorphism groups of abelian threefolds, shape by shape.
//!
//! An isogeny class of threefolds over `F_q` splits as one of six shapes.
//! For each factor the fact table gives the maximal finite subgroups of
//! the unit group of its endomorphism algebra (its *role groups*); the
//! groups of a product shape are products of role groups over distinct
//! isogeny classes defined over the same field, with non-maximal products
//! removed. Elliptic classes are enumerated from their Weil polynomials
//! `t^2 - βt + q`, so only surfaces, simple threefolds and the role tables
//! keyed by endomorphism algebra are stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::cyclo::cyclotomic_poly;
use crate::arith::nt::{euler_phi, exact_sqrt, is_prime, isqrt, prime_power, squarefree_part};
use crate::arith::numfield::{contains_zeta, normalized, roots_of_unity_order};
use crate::arith::{Rat, RatPoly};
use crate::groups::catalog::Catalog;
use crate::groups::search::embeds_bounded;
use crate::groups::FinGroup;
use crate::quat::{gl1_maximal, QuatData};
use crate::weil::{end_algebra, is_weil_poly, EndAlgDescriptor, PlaceKind};
use crate::{Error, Result};

pub const FACTS_JSON: &str = include_str!("../data/facts.json");

/// Largest group the maximality filter materializes.
pub const FILTER_ORDER_BOUND: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "simple3")]
    Simple3,
    #[serde(rename = "surface-elliptic")]
    SurfaceElliptic,
    #[serde(rename = "e1-e2-e3")]
    ThreeElliptic,
    #[serde(rename = "e1sq-e2")]
    SquareElliptic,
    #[serde(rename = "ordinary-cube")]
    OrdinaryCube,
    #[serde(rename = "supersingular-cube")]
    SupersingularCube,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::Simple3,
        Shape::SurfaceElliptic,
        Shape::ThreeElliptic,
        Shape::SquareElliptic,
        Shape::OrdinaryCube,
        Shape::SupersingularCube,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Shape::Simple3 => "simple3",
            Shape::SurfaceElliptic => "surface-elliptic",
            Shape::ThreeElliptic => "e1-e2-e3",
            Shape::SquareElliptic => "e1sq-e2",
            Shape::OrdinaryCube => "ordinary-cube",
            Shape::SupersingularCube => "supersingular-cube",
        }
    }

    /// Descriptive name, e.g. `E₁²×E₂`.
    pub fn name(self) -> &'static str {
        match self {
            Shape::Simple3 => "Simple3",
            Shape::SurfaceElliptic => "Surface×Elliptic",
            Shape::ThreeElliptic => "E₁×E₂×E₃",
            Shape::SquareElliptic => "E₁²×E₂",
            Shape::OrdinaryCube => "OrdinaryCube",
            Shape::SupersingularCube => "SupersingularCube",
        }
    }

    pub fn is_product(self) -> bool {
        !matches!(self, Shape::Simple3)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Shape> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, ' ' | '_' | '-'))
            .map(|c| match c {
                '₁' | '¹' => '1',
                '₂' => '2',
                '₃' | '³' => '3',
                '²' => '2',
                '×' | '*' => 'x',
                c => c.to_ascii_lowercase(),
            })
            .collect();
        Ok(match key.as_str() {
            "simple3" | "simple" => Shape::Simple3,
            "surfaceelliptic" | "surfacexelliptic" => Shape::SurfaceElliptic,
            "e1e2e3" | "e1xe2xe3" => Shape::ThreeElliptic,
            "e1sqe2" | "e12xe2" | "e1^2xe2" | "e1^2e2" | "e12e2" => Shape::SquareElliptic,
            "ordinarycube" | "ordinary" => Shape::OrdinaryCube,
            "supersingularcube" | "supersingular" => Shape::SupersingularCube,
            _ => return Err(Error::Invalid(format!("unknown shape {s:?}"))),
        })
    }
}

/// A named endomorphism algebra, as written in the witness tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EndLabel {
    /// `Q(√-d)`, `d` squarefree.
    ImagQuadratic(u64),
    /// `D_{p,∞}`.
    Quaternion(u64),
    /// `D_{p,∞} ⊗ Q(√d)`.
    QuaternionRealQuadratic { p: u64, d: u64 },
    /// `Q(ζ_n)`.
    Cyclotomic(u64),
    /// `Q(c1√d1 + c2√d2)` with `d1 > 0 > d2`.
    Biquadratic { c1: i64, d1: i64, c2: i64, d2: i64 },
    /// A CM field of the given degree, otherwise unnamed.
    Cm(u32),
}

impl fmt::Display for EndLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |c: i64| if c == 1 { String::new() } else { c.to_string() };
        match *self {
            EndLabel::ImagQuadratic(d) => write!(f, "Q(√-{d})"),
            EndLabel::Quaternion(p) => write!(f, "D_{{{p},∞}}"),
            EndLabel::QuaternionRealQuadratic { p, d } => write!(f, "D_{{{p},∞}}⊗Q(√{d})"),
            EndLabel::Cyclotomic(n) => write!(f, "Q(ζ{n})"),
            EndLabel::Biquadratic { c1, d1, c2, d2 } => {
                write!(f, "Q({}√{d1}+{}√{d2})", coef(c1), coef(c2))
            }
            EndLabel::Cm(e) => write!(f, "CM({e})"),
        }
    }
}

impl From<EndLabel> for String {
    fn from(l: EndLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for EndLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<EndLabel> {
        s.parse()
    }
}

fn parse_u64(s: &str, orig: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::Parse(format!("end algebra {orig:?}")))
}

/// `c√d` with an optional integer coefficient.
fn parse_surd(s: &str, orig: &str) -> Result<(i64, i64)> {
    let (c, d) = s.split_once('√').ok_or_else(|| Error::Parse(format!("end algebra {orig:?}")))?;
    let c = if c.is_empty() { 1 } else { c.parse().map_err(|_| Error::Parse(format!("end algebra {orig:?}")))? };
    let d = d.parse().map_err(|_| Error::Parse(format!("end algebra {orig:?}")))?;
    Ok((c, d))
}

impl FromStr for EndLabel {
    type Err = Error;

    fn from_str(orig: &str) -> Result<EndLabel> {
        let s: String = orig
            .replace("sqrt", "√")
            .replace("zeta", "ζ")
            .replace("inf", "∞")
            .replace("(x)", "⊗")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let bad = || Error::Parse(format!("end algebra {orig:?}"));
        if let Some(e) = s.strip_prefix("CM(").and_then(|r| r.strip_suffix(')')) {
            return Ok(EndLabel::Cm(e.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("D_{").or_else(|| s.strip_prefix("D")) {
            let (p, tail) = match rest.split_once(",∞}") {
                Some((p, tail)) => (p, tail),
                None => (rest, ""),
            };
            let p = parse_u64(p, orig)?;
            if !is_prime(p) {
                return Err(bad());
            }
            if tail.is_empty() {
                return Ok(EndLabel::Quaternion(p));
            }
            let d = tail.strip_prefix("⊗Q(√").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            return Ok(EndLabel::QuaternionRealQuadratic { p, d: parse_u64(d, orig)? });
        }
        let inner = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        if let Some(n) = inner.strip_prefix('ζ') {
            return Ok(EndLabel::Cyclotomic(parse_u64(n, orig)?));
        }
        if let Some(d) = inner.strip_prefix("√-") {
            return Ok(EndLabel::ImagQuadratic(parse_u64(d, orig)?));
        }
        let (a, b) = inner.split_once('+').ok_or_else(bad)?;
        let (c1, d1) = parse_surd(a, orig)?;
        let (c2, d2) = parse_surd(b, orig)?;
        if d1 <= 0 || d2 >= 0 {
            return Err(bad());
        }
        Ok(EndLabel::Biquadratic { c1, d1, c2, d2 })
    }
}

impl EndLabel {
    /// Whether the descriptor is the named algebra.
    ///
    /// Quadratic fields are compared by discriminant, quaternion algebras
    /// by their invariants, cyclotomic centers through the minimal
    /// polynomial of `π/√q` (or by containing `ζ_n` when that fails), and `Q(c1√d1 + c2√d2)` through the minimal
    /// polynomial of that generator, which the Weil number itself must be.
    pub fn matches(&self, desc: &EndAlgDescriptor) -> bool {
        let half = Rat::new(1.into(), 2.into());
        let Ok((p, _)) = prime_power(desc.q) else { return false };
        match *self {
            EndLabel::ImagQuadratic(d) => {
                desc.commutative && desc.e == 2 && quadratic_squarefree(&desc.h) == Some(-(d as i64))
            }
            EndLabel::Quaternion(lp) => {
                desc.e == 1
                    && desc.d == 2
                    && lp == p
                    && desc.values(PlaceKind::Real) == [half.clone()]
                    && desc.values(PlaceKind::AboveP) == [half]
            }
            EndLabel::QuaternionRealQuadratic { p: lp, d } => {
                desc.e == 2
                    && desc.d == 2
                    && quadratic_squarefree(&desc.h) == Some(d as i64)
                    && desc.values(PlaceKind::Real) == [half.clone(), half]
                    && desc.values(PlaceKind::AboveP).iter().all(Zero::is_zero)
                    && !splits_in_real_quadratic(lp, d)
            }
            EndLabel::Cyclotomic(n) => {
                if !desc.commutative || desc.e as u64 != euler_phi(n) {
                    return false;
                }
                match exact_sqrt(desc.q) {
                    Some(s) if normalized(&desc.h, s) == cyclotomic_poly(n) => true,
                    _ => contains_zeta(&desc.h, n),
                }
            }
            EndLabel::Biquadratic { c1, d1, c2, d2 } => {
                let a = c1 * c1 * d1;
                let b = c2 * c2 * d2;
                let g = RatPoly::from_ints(&[(a - b) * (a - b), 0, -2 * (a + b), 0, 1]);
                desc.commutative && desc.h == g
            }
            EndLabel::Cm(e) => desc.commutative && desc.e == e && sturm_free_real(&desc.h),
        }
    }
}

/// Squarefree part of the discriminant of a monic quadratic.
fn quadratic_squarefree(h: &RatPoly) -> Option<i64> {
    if h.degree() != 2 {
        return None;
    }
    let b = h.coeff(1);
    let c = h.coeff(0);
    let disc = &b * &b - Rat::from_integer(4.into()) * c;
    if !disc.is_integer() {
        return None;
    }
    Some(squarefree_part(disc.to_integer().to_i64()?))
}

/// Whether the prime `p` splits in `Q(√d)`, `d > 1` squarefree.
fn splits_in_real_quadratic(p: u64, d: u64) -> bool {
    if d.is_multiple_of(p) {
        return false;
    }
    if p == 2 {
        return d % 8 == 1;
    }
    crate::arith::nt::pow_mod(d % p, (p - 1) / 2, p) == 1
}

/// A CM field has no real embeddings.
fn sturm_free_real(h: &RatPoly) -> bool {
    crate::weil::sturm::count_real_roots(h) == 0
}

/// One isogeny class of elliptic curves over `F_q`.
#[derive(Clone, Debug)]
pub struct EllipticClass {
    /// Characteristic polynomial of Frobenius.
    pub f: RatPoly,
    pub desc: EndAlgDescriptor,
    pub end: EndLabel,
    pub ordinary: bool,
    /// Maximal finite subgroups of `End⁰(E)^×`.
    pub groups: Vec<String>,
}

/// Role of a factor inside a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Simple,
    Surface,
    Elliptic,
    Square,
    Cube,
}

/// A factor of a realization: the class used and the groups it contributes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub role: Role,
    pub h: String,
    pub q: u64,
    pub end: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub group: String,
    pub factors: Vec<FactorWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimpleFact {
    pub h: String,
    pub q: u64,
    pub end: EndLabel,
    pub group: String,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFact {
    pub h: String,
    pub q: u64,
    pub end: EndLabel,
    pub groups: Vec<String>,
    pub source: String,
}

/// Groups attached to every elliptic class with the given algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeyedGroups {
    pub end: EndLabel,
    pub groups: Vec<String>,
    pub source: String,
}

/// A row of a witness table: groups realized over `F_q` by classes with
/// the listed algebras.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessRow {
    pub shape: Shape,
    pub q: u64,
    pub groups: Vec<String>,
    #[serde(default)]
    pub surface_h: Option<String>,
    pub ends: Vec<EndLabel>,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSet {
    pub shape: Shape,
    pub q: Vec<u64>,
}

/// One numbered case of a classification list: the product of the
/// alternatives for each factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenItem {
    pub item: u32,
    pub factors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenSpec {
    pub shape: Shape,
    pub items: Vec<GoldenItem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub group: String,
    pub tag: String,
}

/// Unconstrained component sets of a product shape, with the reasons
/// recorded for particular excluded products.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditSpec {
    pub shape: Shape,
    pub factors: Vec<Vec<String>>,
    pub reasons: Vec<Reason>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Facts {
    pub version: u32,
    pub fields: Vec<FieldSet>,
    pub simple: Vec<SimpleFact>,
    pub surface: Vec<SurfaceFact>,
    pub square: Vec<KeyedGroups>,
    pub cube: Vec<KeyedGroups>,
    pub witnesses: Vec<WitnessRow>,
    pub golden: Vec<GoldenSpec>,
    pub audits: Vec<AuditSpec>,
}

impl Facts {
    pub fn from_json(json: &str) -> Result<Facts> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("facts: {e}")))
    }

    pub fn builtin() -> Facts {
        Facts::from_json(FACTS_JSON).expect("bundled facts are valid")
    }

    pub fn fields(&self, shape: Shape) -> &[u64] {
        self.fields.iter().find(|f| f.shape == shape).map(|f| f.q.as_slice()).unwrap_or(&[])
    }
}

/// Tag for excluded products without a recorded reason.
pub const UNATTRIBUTED: &str = "unattributed";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedList {
    pub shape: Shape,
    pub groups: Vec<String>,
    pub excluded: Vec<Reason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub shape: Shape,
    pub total: usize,
    pub excluded: usize,
    pub reasons: Vec<Reason>,
}

/// Two products from the same class assignment, the first embedding
/// properly in the second componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dominated {
    pub q: u64,
    pub smaller: String,
    pub larger: String,
}

/// Result of combining over one field.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Combination {
    pub realizations: Vec<Realization>,
    /// Products removed by the maximality filter.
    pub dominated: Vec<Dominated>,
    /// Component comparisons skipped because a group exceeds the bound.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub source: String,
    pub shape: Option<Shape>,
    pub q: u64,
    pub groups: Vec<String>,
    /// Polynomials used for each factor, in order.
    pub polys: Vec<String>,
    pub ok: bool,
    pub problem: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub checks: Vec<WitnessCheck>,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> Vec<&WitnessCheck> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

type Assignment = Vec<(FactorWitness, Vec<String>)>;

/// The combination engine with its tables and caches.
pub struct Classifier {
    facts: Facts,
    quat: QuatData,
    catalog: Catalog,
    classes: RefCell<BTreeMap<u64, Rc<Vec<EllipticClass>>>>,
    built: RefCell<BTreeMap<String, Rc<FinGroup>>>,
    embeds: RefCell<BTreeMap<(String, String), Option<bool>>>,
}

impl Classifier {
    pub fn new(facts: Facts, quat: QuatData, catalog: Catalog) -> Classifier {
        Classifier {
            facts,
            quat,
            catalog,
            classes: RefCell::new(BTreeMap::new()),
            built: RefCell::new(BTreeMap::new()),
            embeds: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn builtin() -> Classifier {
        Classifier::new(Facts::builtin(), QuatData::builtin(), Catalog::builtin())
    }

    pub fn facts(&self) -> &Facts {
        &self.facts
    }

    pub fn canonical(&self, label: &str) -> Result<String> {
        self.catalog.canonical(label)
    }

    fn product(&self, parts: &[String]) -> Result<String> {
        let mut acc = self.catalog.parse("C1")?;
        for p in parts {
            acc = acc.times(&self.catalog.parse(p)?);
        }
        Ok(acc.to_string())
    }

    fn order(&self, label: &str) -> Result<u64> {
        Ok(self.catalog.parse(label)?.order())
    }

    fn sort_labels(&self, set: BTreeSet<String>) -> Result<Vec<String>> {
        let mut v: Vec<(u64, String)> = set.into_iter().map(|g| Ok((self.order(&g)?, g))).collect::<Result<_>>()?;
        v.sort();
        Ok(v.into_iter().map(|(_, g)| g).collect())
    }

    fn group(&self, label: &str) -> Result<Rc<FinGroup>> {
        if let Some(g) = self.built.borrow().get(label) {
            return Ok(g.clone());
        }
        let g = Rc::new(self.catalog.build(label)?);
        self.built.borrow_mut().insert(label.to_string(), g.clone());
        Ok(g)
    }

    /// Whether `a` embeds properly in `b`; `None` when `b` is too large to
    /// search.
    fn proper_embedding(&self, a: &str, b: &str) -> Result<Option<bool>> {
        if a == b {
            return Ok(Some(false));
        }
        let (oa, ob) = (self.order(a)?, self.order(b)?);
        if oa >= ob || ob % oa != 0 {
            return Ok(Some(false));
        }
        if ob as usize > FILTER_ORDER_BOUND {
            return Ok(None);
        }
        let key = (a.to_string(), b.to_string());
        if let Some(r) = self.embeds.borrow().get(&key) {
            return Ok(*r);
        }
        let (ga, gb) = (self.group(a)?, self.group(b)?);
        let r = Some(embeds_bounded(&ga, &gb, FILTER_ORDER_BOUND)?);
        self.embeds.borrow_mut().insert(key, r);
        Ok(r)
    }

    fn role_groups(&self, desc: &EndAlgDescriptor, end: &EndLabel) -> Result<Vec<String>> {
        match end {
            EndLabel::Quaternion(p) => Ok(gl1_maximal(*p)?.into_iter().map(String::from).collect()),
            _ => Ok(vec![format!("C{}", roots_of_unity_order(&desc.h))]),
        }
    }

    fn classify_elliptic(&self, f: RatPoly, q: u64) -> Result<Option<EllipticClass>> {
        let desc = end_algebra(&f, q)?;
        if desc.g != 1 {
            return Ok(None);
        }
        let (p, _) = prime_power(q)?;
        let end = if desc.e == 1 {
            EndLabel::Quaternion(p)
        } else {
            let d = quadratic_squarefree(&desc.h).ok_or_else(|| Error::Invalid(format!("{f} over F_{q}")))?;
            EndLabel::ImagQuadratic((-d) as u64)
        };
        let beta = -f.coeff(1);
        let ordinary = !(beta.to_integer() % num_bigint::BigInt::from(p)).is_zero();
        let groups = self.role_groups(&desc, &end)?;
        Ok(Some(EllipticClass { f, desc, end, ordinary, groups }))
    }

    /// All isogeny classes of elliptic curves over `F_q`.
    pub fn elliptic_classes(&self, q: u64) -> Result<Rc<Vec<EllipticClass>>> {
        if let Some(c) = self.classes.borrow().get(&q) {
            return Ok(c.clone());
        }
        prime_power(q)?;
        let bound = isqrt(4 * q) as i64;
        let mut out = Vec::new();
        for beta in -bound..=bound {
            if (beta * beta) as u64 > 4 * q {
                continue;
            }
            let f = RatPoly::from_ints(&[q as i64, -beta, 1]);
            if let Some(c) = self.classify_elliptic(f, q)? {
                out.push(c);
            }
        }
        let out = Rc::new(out);
        self.classes.borrow_mut().insert(q, out.clone());
        Ok(out)
    }

    /// Supersingular classes over `F_q` with every endomorphism defined:
    /// Frobenius `±√q`, so `q` must be an even power of `p`.
    pub fn supersingular_classes(&self, q: u64) -> Result<Vec<EllipticClass>> {
        prime_power(q)?;
        let Some(s) = exact_sqrt(q) else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for sign in [1i64, -1] {
            let lin = RatPoly::from_ints(&[-sign * s as i64, 1]);
            if let Some(c) = self.classify_elliptic(&lin * &lin, q)? {
                out.push(c);
            }
        }
        Ok(out)
    }

    fn keyed<'a>(table: &'a [KeyedGroups], end: &EndLabel) -> Option<&'a [String]> {
        table.iter().find(|k| &k.end == end).map(|k| k.groups.as_slice())
    }

    fn elliptic_factor(c: &EllipticClass, role: Role, q: u64) -> FactorWitness {
        FactorWitness { role, h: c.f.to_string(), q, end: c.end.to_string() }
    }

    fn assignments(&self, shape: Shape, q: u64) -> Result<Vec<Assignment>> {
        let (p, _) = prime_power(q)?;
        let mut out: Vec<Assignment> = Vec::new();
        match shape {
            Shape::Simple3 => {
                for s in self.facts.simple.iter().filter(|s| s.q == q) {
                    let w = FactorWitness { role: Role::Simple, h: s.h.clone(), q, end: s.end.to_string() };
                    out.push(vec![(w, vec![s.group.clone()])]);
                }
            }
            Shape::SurfaceElliptic => {
                let surfaces: Vec<&SurfaceFact> = self.facts.surface.iter().filter(|s| s.q == q).collect();
                if !surfaces.is_empty() {
                    let ells = self.elliptic_classes(q)?;
                    for s in surfaces {
                        let w = FactorWitness { role: Role::Surface, h: s.h.clone(), q, end: s.end.to_string() };
                        for e in ells.iter() {
                            out.push(vec![
                                (w.clone(), s.groups.clone()),
                                (Self::elliptic_factor(e, Role::Elliptic, q), e.groups.clone()),
                            ]);
                        }
                    }
                }
            }
            Shape::ThreeElliptic => {
                let ells = self.elliptic_classes(q)?;
                let n = ells.len();
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            out.push(
                                [i, j, k]
                                    .iter()
                                    .map(|&x| (Self::elliptic_factor(&ells[x], Role::Elliptic, q), ells[x].groups.clone()))
                                    .collect(),
                            );
                        }
                    }
                }
            }
            Shape::SquareElliptic => {
                let ells = self.elliptic_classes(q)?;
                for (i, a) in ells.iter().enumerate() {
                    let Some(g1) = Self::keyed(&self.facts.square, &a.end) else { continue };
                    for (j, b) in ells.iter().enumerate() {
                        if i != j {
                            out.push(vec![
                                (Self::elliptic_factor(a, Role::Square, q), g1.to_vec()),
                                (Self::elliptic_factor(b, Role::Elliptic, q), b.groups.clone()),
                            ]);
                        }
                    }
                }
            }
            Shape::OrdinaryCube => {
                for c in self.elliptic_classes(q)?.iter().filter(|c| c.ordinary) {
                    if let Some(g) = Self::keyed(&self.facts.cube, &c.end) {
                        out.push(vec![(Self::elliptic_factor(c, Role::Cube, q), g.to_vec())]);
                    }
                }
            }
            Shape::SupersingularCube => {
                let classes = self.supersingular_classes(q)?;
                if !classes.is_empty() && self.quat.gl3_primes().contains(&p) {
                    let groups: Vec<String> = self.quat.gl3_maximal(p)?.into_iter().map(|r| r.group).collect();
                    for c in &classes {
                        out.push(vec![(Self::elliptic_factor(c, Role::Cube, q), groups.clone())]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Componentwise comparison of two tuples of component labels.
    fn tuple_below(&self, a: &[String], b: &[String], skipped: &mut usize) -> Result<bool> {
        let mut proper = false;
        for (x, y) in a.iter().zip(b) {
            if x == y {
                continue;
            }
            match self.proper_embedding(x, y)? {
                Some(true) => proper = true,
                Some(false) => return Ok(false),
                None => {
                    *skipped += 1;
                    return Ok(false);
                }
            }
        }
        Ok(proper)
    }

    fn combine_assignment(&self, q: u64, a: &Assignment, acc: &mut Combination, seen: &mut BTreeSet<String>) -> Result<()> {
        let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
        for (_, gs) in a {
            let mut next = Vec::new();
            for t in &tuples {
                for g in gs {
                    let mut u = t.clone();
                    u.push(g.clone());
                    next.push(u);
                }
            }
            tuples = next;
        }
        let labels: Vec<String> = tuples.iter().map(|t| self.product(t)).collect::<Result<_>>()?;
        for (i, t) in tuples.iter().enumerate() {
            let mut maximal = true;
            for (j, u) in tuples.iter().enumerate() {
                if i != j && self.tuple_below(t, u, &mut acc.skipped)? {
                    acc.dominated.push(Dominated { q, smaller: labels[i].clone(), larger: labels[j].clone() });
                    maximal = false;
                    break;
                }
            }
            if maximal && seen.insert(labels[i].clone()) {
                acc.realizations.push(Realization {
                    group: labels[i].clone(),
                    factors: a.iter().map(|(w, _)| w.clone()).collect(),
                });
            }
        }
        Ok(())
    }

    /// Maximal products for `shape` over `F_q`, with one witness each.
    pub fn combine_detailed(&self, shape: Shape, q: u64) -> Result<Combination> {
        let assignments = self.assignments(shape, q)?;
        if assignments.is_empty() {
            return Err(Error::UnknownWitness(format!("{} over F_{q}", shape.tag())));
        }
        let mut acc = Combination::default();
        let mut seen = BTreeSet::new();
        for a in &assignments {
            self.combine_assignment(q, a, &mut acc, &mut seen)?;
        }
        let order: Vec<String> = self.sort_labels(seen)?;
        acc.realizations.sort_by_key(|r| order.iter().position(|g| g == &r.group));
        Ok(acc)
    }

    pub fn combine(&self, shape: Shape, p: u64, a: u32) -> Result<Vec<String>> {
        let q = field_size(p, a)?;
        Ok(self.combine_detailed(shape, q)?.realizations.into_iter().map(|r| r.group).collect())
    }

    fn golden_set(&self, shape: Shape) -> Result<BTreeSet<String>> {
        let spec = self
            .facts
            .golden
            .iter()
            .find(|g| g.shape == shape)
            .ok_or_else(|| Error::UnknownWitness(format!("golden list for {}", shape.tag())))?;
        let mut set = BTreeSet::new();
        for item in &spec.items {
            for t in cartesian(&item.factors) {
                set.insert(self.product(&t)?);
            }
        }
        Ok(set)
    }

    fn audit_spec(&self, shape: Shape) -> Option<&AuditSpec> {
        self.facts.audits.iter().find(|a| a.shape == shape)
    }

    /// All unconstrained combinations, as unordered products.
    fn combinations(&self, spec: &AuditSpec) -> Result<BTreeSet<String>> {
        let mut set = BTreeSet::new();
        for t in cartesian(&spec.factors) {
            set.insert(self.product(&t)?);
        }
        Ok(set)
    }

    fn reasons_for(&self, spec: &AuditSpec, excluded: &BTreeSet<String>) -> Result<Vec<Reason>> {
        let tagged: BTreeMap<String, String> =
            spec.reasons.iter().map(|r| Ok((self.canonical(&r.group)?, r.tag.clone()))).collect::<Result<_>>()?;
        let sorted = self.sort_labels(excluded.clone())?;
        Ok(sorted
            .into_iter()
            .map(|g| {
                let tag = tagged.get(&g).cloned().unwrap_or_else(|| UNATTRIBUTED.to_string());
                Reason { group: g, tag }
            })
            .collect())
    }

    fn classified(&self, shape: Shape, groups: BTreeSet<String>) -> Result<ClassifiedList> {
        let excluded = match self.audit_spec(shape) {
            Some(spec) => {
                let all = self.combinations(spec)?;
                let ex: BTreeSet<String> = all.difference(&groups).cloned().collect();
                self.reasons_for(spec, &ex)?
            }
            None => Vec::new(),
        };
        Ok(ClassifiedList { shape, groups: self.sort_labels(groups)?, excluded })
    }

    /// The stored classification list for `shape`.
    pub fn golden_list(&self, shape: Shape) -> Result<ClassifiedList> {
        let set = self.golden_set(shape)?;
        self.classified(shape, set)
    }

    /// Union of [`Classifier::combine`] over the stored witness fields.
    pub fn union_over_fields(&self, shape: Shape) -> Result<ClassifiedList> {
        let mut set = BTreeSet::new();
        for &q in self.facts.fields(shape) {
            for r in self.combine_detailed(shape, q)?.realizations {
                set.insert(r.group);
            }
        }
        self.classified(shape, set)
    }

    /// `(total, excluded, reasons)` for a product shape with stored
    /// component sets.
    pub fn exclusion_audit(&self, shape: Shape) -> Result<Audit> {
        let spec = self
            .audit_spec(shape)
            .ok_or_else(|| Error::Invalid(format!("no exclusion audit for {}", shape.tag())))?;
        let all = self.combinations(spec)?;
        let realized: BTreeSet<String> = self.union_over_fields(shape)?.groups.into_iter().collect();
        let excluded: BTreeSet<String> = all.difference(&realized).cloned().collect();
        Ok(Audit { shape, total: all.len(), excluded: excluded.len(), reasons: self.reasons_for(spec, &excluded)? })
    }

    /// Products removed by the maximality filter over every witness field,
    /// and the number of comparisons skipped for size.
    pub fn maximality_violations(&self, shape: Shape) -> Result<(Vec<Dominated>, usize)> {
        let mut out = Vec::new();
        let mut skipped = 0;
        for &q in self.facts.fields(shape) {
            let c = self.combine_detailed(shape, q)?;
            out.extend(c.dominated);
            skipped += c.skipped;
        }
        Ok((out, skipped))
    }

    fn check_descriptor(h: &str, q: u64, end: &EndLabel, g: u32) -> core::result::Result<EndAlgDescriptor, String> {
        let f = RatPoly::parse(h).map_err(|e| e.to_string())?;
        if !is_weil_poly(&f, q).map_err(|e| e.to_string())? {
            return Err(format!("{h} is not a {q}-Weil polynomial"));
        }
        let desc = end_algebra(&f, q).map_err(|e| e.to_string())?;
        if desc.g != g {
            return Err(format!("{h} over F_{q} has dimension {}", desc.g));
        }
        if !end.matches(&desc) {
            return Err(format!("{h} over F_{q} does not have End⁰ = {end}"));
        }
        Ok(desc)
    }

    fn check_group_fact(&self, h: &str, q: u64, end: &EndLabel, g: u32, groups: &[String]) -> core::result::Result<(), String> {
        let desc = Self::check_descriptor(h, q, end, g)?;
        if desc.commutative {
            let mu = format!("C{}", roots_of_unity_order(&desc.h));
            if groups != [mu.clone()] {
                return Err(format!("roots of unity of the center give {mu}"));
            }
        }
        Ok(())
    }

    /// Elliptic classes over `F_q` with the given algebras, pairwise distinct.
    fn pick_classes(&self, q: u64, ends: &[EndLabel], ordinary: bool) -> core::result::Result<Vec<EllipticClass>, String> {
        let pool: Vec<EllipticClass> = if ends.iter().all(|e| matches!(e, EndLabel::Quaternion(_))) {
            self.supersingular_classes(q).map_err(|e| e.to_string())?
        } else {
            self.elliptic_classes(q).map_err(|e| e.to_string())?.to_vec()
        };
        let mut used = vec![false; pool.len()];
        let mut out = Vec::new();
        for end in ends {
            let idx = pool
                .iter()
                .enumerate()
                .position(|(i, c)| !used[i] && &c.end == end && (!ordinary || c.ordinary))
                .ok_or_else(|| format!("no further elliptic class over F_{q} with End⁰ = {end}"))?;
            used[idx] = true;
            let c = &pool[idx];
            if !end.matches(&c.desc) {
                return Err(format!("{} does not match {end}", c.f));
            }
            out.push(c.clone());
        }
        Ok(out)
    }

    fn check_row(&self, row: &WitnessRow) -> core::result::Result<Vec<String>, String> {
        let q = row.q;
        let mut polys = Vec::new();
        let mut assignment: Assignment = Vec::new();
        let mut ends: &[EndLabel] = &row.ends;
        if row.shape == Shape::SurfaceElliptic {
            let h = row.surface_h.as_deref().ok_or("surface row without a polynomial")?;
            let fact = self
                .facts
                .surface
                .iter()
                .find(|s| s.q == q && s.h == h)
                .ok_or_else(|| format!("no surface fact for {h} over F_{q}"))?;
            Self::check_descriptor(h, q, &ends[0], 2)?;
            polys.push(h.to_string());
            let w = FactorWitness { role: Role::Surface, h: h.to_string(), q, end: ends[0].to_string() };
            assignment.push((w, fact.groups.clone()));
            ends = &ends[1..];
        }
        let classes = self.pick_classes(q, ends, row.shape == Shape::OrdinaryCube)?;
        let (p, _) = prime_power(q).map_err(|e| e.to_string())?;
        for (i, c) in classes.iter().enumerate() {
            if !is_weil_poly(&c.f, q).map_err(|e| e.to_string())? {
                return Err(format!("{} is not a {q}-Weil polynomial", c.f));
            }
            polys.push(c.f.to_string());
            let (role, groups) = match row.shape {
                Shape::SquareElliptic if i == 0 => {
                    let g = Self::keyed(&self.facts.square, &c.end).ok_or_else(|| format!("no square-role groups for {}", c.end))?;
                    (Role::Square, g.to_vec())
                }
                Shape::OrdinaryCube => {
                    let g = Self::keyed(&self.facts.cube, &c.end).ok_or_else(|| format!("no cube-role groups for {}", c.end))?;
                    (Role::Cube, g.to_vec())
                }
                Shape::SupersingularCube => {
                    let g = self.quat.gl3_maximal(p).map_err(|e| e.to_string())?;
                    (Role::Cube, g.into_iter().map(|r| r.group).collect())
                }
                _ => (Role::Elliptic, c.groups.clone()),
            };
            assignment.push((Self::elliptic_factor(c, role, q), groups));
        }
        let mut comb = Combination::default();
        let mut seen = BTreeSet::new();
        self.combine_assignment(q, &assignment, &mut comb, &mut seen).map_err(|e| e.to_string())?;
        for g in &row.groups {
            let g = self.canonical(g).map_err(|e| e.to_string())?;
            if !seen.contains(&g) {
                return Err(format!("{g} is not a maximal product for these classes"));
            }
        }
        Ok(polys)
    }

    /// Runs every stored fact and witness row through the Weil and
    /// endomorphism-algebra checks.
    pub fn verify_witnesses(&self) -> WitnessReport {
        let mut checks = Vec::new();
        let mut push = |source: &str, shape: Option<Shape>, q: u64, groups: Vec<String>, res: core::result::Result<Vec<String>, String>| {
            let (ok, polys, problem) = match res {
                Ok(p) => (true, p, None),
                Err(e) => (false, Vec::new(), Some(e)),
            };
            checks.push(WitnessCheck { source: source.to_string(), shape, q, groups, polys, ok, problem });
        };
        for s in &self.facts.simple {
            let res = self.check_group_fact(&s.h, s.q, &s.end, 3, core::slice::from_ref(&s.group)).map(|_| vec![s.h.clone()]);
            push(&s.source, Some(Shape::Simple3), s.q, vec![s.group.clone()], res);
        }
        for s in &self.facts.surface {
            let res = self.check_group_fact(&s.h, s.q, &s.end, 2, &s.groups).map(|_| vec![s.h.clone()]);
            push(&s.source, None, s.q, s.groups.clone(), res);
        }
        for row in &self.facts.witnesses {
            push(&row.source, Some(row.shape), row.q, row.groups.clone(), self.check_row(row));
        }
        WitnessReport { checks }
    }
}

fn cartesian(factors: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for alts in factors {
        out = out
            .iter()
            .flat_map(|t| {
                alts.iter().map(move |g| {
                    let mut u = t.clone();
                    u.push(g.clone());
                    u
                })
            })
            .collect();
    }
    out
}

/// `p^a`, checking that `p` is prime.
pub fn field_size(p: u64, a: u32) -> Result<u64> {
    if !is_prime(p) || a == 0 {
        return Err(Error::NotPrimePower(p));
    }
    p.checked_pow(a).ok_or_else(|| Error::Invalid(format!("{p}^{a} overflows")))
}

pub fn golden_list(shape: Shape) -> Result<ClassifiedList> {
    Classifier::builtin().golden_list(shape)
}

pub fn combine(shape: Shape, p: u64, a: u32) -> Result<Vec<String>> {
    Classifier::builtin().combine(shape, p, a)
}

pub fn union_over_fields(shape: Shape) -> Result<ClassifiedList> {
    Classifier::builtin().union_over_fields(shape)
}

pub fn exclusion_audit(shape: Shape) -> Result<Audit> {
    Classifier::builtin().exclusion_audit(shape)
}

pub fn verify_witnesses() -> WitnessReport {
    Classifier::builtin().verify_witnesses()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_names() {
        for s in Shape::ALL {
            assert_eq!(s.tag().parse::<Shape>().unwrap(), s);
            assert_eq!(s.name().parse::<Shape>().unwrap(), s);
        }
        assert_eq!("E1xE2xE3".parse::<Shape>().unwrap(), Shape::ThreeElliptic);
        assert!("E4".parse::<Shape>().is_err());
    }

    #[test]
    fn end_labels_round_trip() {
        for s in ["Q(√-15)", "D_{2,∞}", "D_{3,∞}⊗Q(√3)", "Q(ζ12)", "Q(√7+2√-3)", "Q(√2+√-3)", "CM(6)"] {
            let l: EndLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert_eq!("D7".parse::<EndLabel>().unwrap(), EndLabel::Quaternion(7));
        assert_eq!("Q(sqrt-2)".parse::<EndLabel>().unwrap(), EndLabel::ImagQuadratic(2));
        assert!("D_{9,∞}".parse::<EndLabel>().is_err());
    }

    #[test]
    fn prime_splitting() {
        assert!(!splits_in_real_quadratic(2, 5));
        assert!(splits_in_real_quadratic(2, 17));
        assert!(!splits_in_real_quadratic(3, 3));
        assert!(splits_in_real_quadratic(11, 5));
        assert!(!splits_in_real_quadratic(2, 13));
    }

    #[test]
    fn field_size_checks() {
        assert_eq!(field_size(7, 2).unwrap(), 49);
        assert!(field_size(9, 1).is_err());
    }
}
