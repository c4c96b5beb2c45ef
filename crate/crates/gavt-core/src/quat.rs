//! Maximal finite subgroups of `GL_1` and `GL_3` over definite quaternion
//! algebras, stored as data and checked against the group engine.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::nt::is_prime;
use crate::groups::catalog::canonical_label;
use crate::groups::search::embeds_bounded;
use crate::groups::{self, embeds_with_hint, FinGroup, DEFAULT_ORDER_BOUND};
use crate::{Error, Result};

pub const QUAT_JSON: &str = include_str!("../data/quat.json");

/// A definite quaternion algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuatAlg {
    /// `D_{p,∞}` over `Q`.
    Rational { p: u64 },
    /// The algebra over `Q(√d)` ramified only at the two infinite places.
    RealQuadratic { d: u64 },
    /// `D_{p,∞} ⊗ Q(ζ_n + ζ_n⁻¹)`.
    CubicTrace { n: u64, p: u64 },
}

impl QuatAlg {
    pub fn rational(p: u64) -> Result<QuatAlg> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(QuatAlg::Rational { p })
    }

    /// Degree of the center over `Q`.
    pub fn center_degree(&self) -> u32 {
        match self {
            QuatAlg::Rational { .. } => 1,
            QuatAlg::RealQuadratic { .. } => 2,
            QuatAlg::CubicTrace { .. } => 3,
        }
    }

    pub fn dim(&self) -> u32 {
        4 * self.center_degree()
    }
}

impl fmt::Display for QuatAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuatAlg::Rational { p } => write!(f, "D_{{{p},∞}}"),
            QuatAlg::RealQuadratic { d } => write!(f, "D_{{√{d},∞}}"),
            QuatAlg::CubicTrace { n, p } => write!(f, "D_{{ζ{n}+ζ{n}^-1,∞,{p}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Primitive,
    Imprimitive,
    Irreducible,
    TypeI,
}

impl Kind {
    pub fn is_absolutely_irreducible(&self) -> bool {
        matches!(self, Kind::Primitive | Kind::Imprimitive)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Primitive => "primitive-absolutely-irreducible",
            Kind::Imprimitive => "imprimitive-absolutely-irreducible",
            Kind::Irreducible => "irreducible-not-absolutely",
            Kind::TypeI => "reducible-type-I",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSubgroupRecord {
    pub group: String,
    pub algebra: QuatAlg,
    pub degree: u32,
    pub kind: Kind,
    /// `dim_Q` of the enveloping algebra; not recorded for reducible groups.
    pub enveloping_dim: Option<u32>,
    /// Row of the envelope-shape table, for irreducible but not absolutely
    /// irreducible groups.
    pub envelope_row: Option<u32>,
    /// The division algebra spanned by the group when it is not the whole
    /// matrix algebra and is itself quaternionic.
    pub envelope: Option<QuatAlg>,
    pub source: String,
}

/// Shape `M_m(Δ)` of a simple enveloping algebra, `Δ` of index `s` over a
/// center of degree `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeShape {
    pub row: u32,
    pub algebra: String,
    pub matrix_size: u32,
    pub schur_index: u32,
    pub center_degree: u32,
    pub dim: u32,
    pub centralizer: String,
    pub centralizer_dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeICase {
    pub case: u32,
    pub p: u64,
    pub g1: Vec<String>,
    pub g2: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Gl1Row {
    row: u32,
    group: String,
    algebra: QuatAlg,
    enveloping_dim: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Gl3Row {
    group: String,
    algebra: QuatAlg,
    kind: Kind,
    enveloping_dim: u32,
    envelope_row: Option<u32>,
    #[serde(default)]
    envelope: Option<QuatAlg>,
    source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonMaximal {
    pub group: String,
    pub algebra: QuatAlg,
    pub container: String,
    #[serde(default)]
    pub envelope: Option<QuatAlg>,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Gl2List {
    pub p: u64,
    pub groups: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct QuatFile {
    version: u32,
    gl1_absolutely_irreducible: Vec<Gl1Row>,
    envelope_shapes: Vec<EnvelopeShape>,
    gl3_records: Vec<Gl3Row>,
    non_maximal: Vec<NonMaximal>,
    type_i: Vec<TypeICase>,
    gl2_irreducible_maximal: Vec<Gl2List>,
}

/// The quaternionic tables, parsed and with labels canonicalized.
#[derive(Clone, Debug)]
pub struct QuatData {
    pub gl1: Vec<MaxSubgroupRecord>,
    pub shapes: Vec<EnvelopeShape>,
    pub gl3: Vec<MaxSubgroupRecord>,
    pub non_maximal: Vec<NonMaximal>,
    pub type_i: Vec<TypeICase>,
    pub gl2: Vec<Gl2List>,
}

impl QuatData {
    pub fn from_json(json: &str) -> Result<QuatData> {
        let f: QuatFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        if f.version != 1 {
            return Err(Error::Parse(format!("unsupported quat data version {}", f.version)));
        }
        let gl1 = f
            .gl1_absolutely_irreducible
            .into_iter()
            .map(|r| {
                Ok(MaxSubgroupRecord {
                    group: canonical_label(&r.group)?,
                    algebra: r.algebra,
                    degree: 1,
                    kind: Kind::Primitive,
                    enveloping_dim: Some(r.enveloping_dim),
                    envelope_row: None,
                    envelope: None,
                    source: format!("gl1-absolutely-irreducible#{}", r.row),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gl3 = f
            .gl3_records
            .into_iter()
            .map(|r| {
                Ok(MaxSubgroupRecord {
                    group: canonical_label(&r.group)?,
                    algebra: r.algebra,
                    degree: 3,
                    kind: r.kind,
                    enveloping_dim: Some(r.enveloping_dim),
                    envelope_row: r.envelope_row,
                    envelope: r.envelope,
                    source: r.source,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for c in &f.type_i {
            for g1 in &c.g1 {
                gl3.push(MaxSubgroupRecord {
                    group: canonical_label(&format!("({g1})×({})", c.g2))?,
                    algebra: QuatAlg::rational(c.p)?,
                    degree: 3,
                    kind: Kind::TypeI,
                    enveloping_dim: None,
                    envelope_row: None,
                    envelope: None,
                    source: format!("type-i#{}", c.case),
                });
            }
        }
        let canon_all = |v: Vec<String>| v.iter().map(|s| canonical_label(s)).collect::<Result<Vec<_>>>();
        let type_i = f
            .type_i
            .into_iter()
            .map(|c| Ok(TypeICase { g1: canon_all(c.g1)?, g2: canonical_label(&c.g2)?, ..c }))
            .collect::<Result<Vec<_>>>()?;
        let gl2 = f
            .gl2_irreducible_maximal
            .into_iter()
            .map(|l| Ok(Gl2List { p: l.p, groups: canon_all(l.groups)? }))
            .collect::<Result<Vec<_>>>()?;
        let non_maximal = f
            .non_maximal
            .into_iter()
            .map(|n| Ok(NonMaximal { group: canonical_label(&n.group)?, container: canonical_label(&n.container)?, ..n }))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuatData { gl1, shapes: f.envelope_shapes, gl3, non_maximal, type_i, gl2 })
    }

    pub fn builtin() -> QuatData {
        QuatData::from_json(QUAT_JSON).expect("bundled quaternion data is valid")
    }

    /// Records of maximal finite subgroups of `GL_3(D_{p,∞})`.
    pub fn gl3_maximal(&self, p: u64) -> Result<Vec<MaxSubgroupRecord>> {
        let alg = QuatAlg::rational(p)?;
        Ok(self.gl3.iter().filter(|r| r.algebra == alg).cloned().collect())
    }

    /// Primes carrying at least one degree-3 record.
    pub fn gl3_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .gl3
            .iter()
            .filter_map(|r| match r.algebra {
                QuatAlg::Rational { p } => Some(p),
                _ => None,
            })
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn gl2_list(&self, p: u64) -> Option<&[String]> {
        self.gl2.iter().find(|l| l.p == p).map(|l| l.groups.as_slice())
    }
}

/// The five absolutely irreducible maximal finite subgroups of `D^×` for
/// `D` over `Q` or a real quadratic field.
pub fn gl1_absolutely_irreducible() -> Vec<MaxSubgroupRecord> {
    QuatData::builtin().gl1
}

pub fn envelope_shapes() -> Vec<EnvelopeShape> {
    QuatData::builtin().shapes
}

/// `dim_Q M_3(D_{p,∞})`.
pub const AMBIENT_DIM: u32 = 36;

/// Checks every envelope shape: the stated dimension is `m²·s²·z`, it
/// divides 36, and the centralizer has the complementary dimension.
pub fn envelope_shapes_consistent() -> bool {
    shapes_consistent(&envelope_shapes())
}

pub fn shapes_consistent(rows: &[EnvelopeShape]) -> bool {
    rows.iter().all(|r| {
        let dim = r.matrix_size * r.matrix_size * r.schur_index * r.schur_index * r.center_degree;
        dim == r.dim && AMBIENT_DIM.is_multiple_of(r.dim) && r.dim * r.centralizer_dim == AMBIENT_DIM
    })
}

/// Records of maximal finite subgroups of `GL_3(D_{p,∞})`.
pub fn gl3_quat_maximal(p: u64) -> Result<Vec<MaxSubgroupRecord>> {
    QuatData::builtin().gl3_maximal(p)
}

/// Maximal finite subgroups of `D_{p,∞}^×` that act irreducibly, as labels.
pub fn gl1_maximal(p: u64) -> Result<Vec<&'static str>> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    Ok(match p {
        2 => vec!["T*"],
        3 => vec!["Dic12"],
        _ => {
            let mut v = Vec::new();
            if p % 4 == 3 {
                v.push("C4");
            }
            if p % 3 == 2 {
                v.push("C6");
            }
            if v.is_empty() {
                v.push("C2");
            }
            v
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Both groups act on the same points and the generators of the smaller
    /// one are elements of the larger.
    Hint,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentCheck {
    pub sub: String,
    pub sup: String,
    pub expected: bool,
    pub method: Method,
    /// `None` when the check could not be run.
    pub holds: Option<bool>,
    pub error: Option<String>,
}

impl ContainmentCheck {
    pub fn passed(&self) -> bool {
        self.holds == Some(self.expected)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub checks: Vec<ContainmentCheck>,
}

impl ContainmentReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(ContainmentCheck::passed)
    }

    pub fn failures(&self) -> Vec<&ContainmentCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

/// Images of the generators of `sub` when it literally sits inside `sup`.
pub fn inclusion_hint(sub: &FinGroup, sup: &FinGroup) -> Option<Vec<u32>> {
    if sub.degree() != sup.degree() {
        return None;
    }
    sub.gens().iter().map(|&g| sup.index_of(sub.elem(g))).collect()
}

fn power(g: &FinGroup, k: usize) -> Result<FinGroup> {
    let mut acc = g.clone();
    for _ in 1..k {
        acc = acc.direct_product(g)?;
    }
    Ok(acc)
}

/// `sub` inside `sup` as permutation groups on the same points.
struct Placed {
    sub: String,
    sup: String,
    g: FinGroup,
    h: FinGroup,
}

/// `B^k ≤ B ≀ Sym_k` on the natural block layout.
fn wreath_base(base: &str, k: usize) -> Result<Placed> {
    let b = groups::build(base)?;
    Ok(Placed {
        sub: format!("{}^{k}", paren(base)),
        sup: format!("{}≀Sym{k}", paren(base)),
        g: power(&b, k)?,
        h: b.wreath_sym(k)?,
    })
}

/// `(B ≀ Sym_{k-1}) × B ≤ B ≀ Sym_k`.
fn wreath_block(base: &str, k: usize) -> Result<Placed> {
    let b = groups::build(base)?;
    Ok(Placed {
        sub: format!("({}≀Sym{})×{}", paren(base), k - 1, paren(base)),
        sup: format!("{}≀Sym{k}", paren(base)),
        g: b.wreath_sym(k - 1)?.direct_product(&b)?,
        h: b.wreath_sym(k)?,
    })
}

fn paren(s: &str) -> String {
    if s.chars().any(|c| "⋊:.≀·×".contains(c)) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn check_placed(placed: Result<Placed>, what: (&str, &str)) -> ContainmentCheck {
    match placed {
        Ok(p) => {
            let hint = inclusion_hint(&p.g, &p.h);
            let holds = match hint {
                Some(h) => embeds_with_hint(&p.g, &p.h, &h),
                None => Ok(false),
            };
            finish(p.sub, p.sup, true, Method::Hint, holds)
        }
        Err(e) => finish(what.0.into(), what.1.into(), true, Method::Hint, Err(e)),
    }
}

fn finish(sub: String, sup: String, expected: bool, method: Method, r: Result<bool>) -> ContainmentCheck {
    let (holds, error) = match r {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(format!("{}: {e}", e.name()))),
    };
    ContainmentCheck { sub, sup, expected, method, holds, error }
}

/// Checks `sub ≤ sup` (or its failure when `expected` is false) by search.
pub fn check_by_search(sub: &str, sup: &str, expected: bool) -> ContainmentCheck {
    let r = (|| {
        let g = groups::build(sub)?;
        let h = groups::build(sup)?;
        embeds_bounded(&g, &h, DEFAULT_ORDER_BOUND)
    })();
    finish(sub.into(), sup.into(), expected, Method::Search, r)
}

/// Every containment the classification relies on, checked constructively.
pub fn verify_containments() -> ContainmentReport {
    let mut checks = Vec::new();
    for (base, k) in [("T*", 3), ("Dic12", 3), ("C2", 3), ("C4", 3), ("C6", 3)] {
        checks.push(check_placed(wreath_base(base, k), (base, base)));
    }
    for base in ["T*", "Dic12"] {
        checks.push(check_placed(wreath_block(base, 3), (base, base)));
    }
    for (sub, sup, expected) in [
        ("C6×C6×C4", "(Dic12⋊C6)×C4", true),
        ("C6×C4×C4", "(T*⋊C4)×C6", true),
        ("Dic36", "Dic12≀Sym3", true),
        ("Q8", "T*", true),
        ("D4×C2", "C2≀Sym3", true),
        ("Dic28", "±L2(7).2", false),
    ] {
        checks.push(check_by_search(sub, sup, expected));
    }
    ContainmentReport { checks }
}

/// A product of three degree-one maximal groups and the strictly larger
/// group that contains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeIICandidate {
    pub factors: [String; 3],
    pub container: String,
    pub dominated: bool,
}

fn container_for(f: &[&'static str; 3]) -> Option<String> {
    if f[0] == f[1] && f[1] == f[2] {
        return Some(format!("{}≀Sym3", f[0]));
    }
    let sixes = f.iter().filter(|&&x| x == "C6").count();
    let fours = f.iter().filter(|&&x| x == "C4").count();
    match (sixes, fours) {
        (2, 1) => Some("(Dic12⋊C6)×C4".into()),
        (1, 2) => Some("(T*⋊C4)×C6".into()),
        _ => None,
    }
}

/// Triples drawn from the degree-one maximal sets, over the residue classes
/// of `p` that give distinct sets.
pub fn type_ii_candidates() -> Vec<[&'static str; 3]> {
    let mut sets: Vec<Vec<&'static str>> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let s = gl1_maximal(p).expect("prime");
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let mut out: Vec<[&'static str; 3]> = Vec::new();
    for s in &sets {
        for a in 0..s.len() {
            for b in a..s.len() {
                for c in b..s.len() {
                    let t = [s[a], s[b], s[c]];
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// Checks each candidate against its container. Wreath containers use the
/// base embedding, mixed products a search.
pub fn type_ii_report() -> Vec<TypeIICandidate> {
    type_ii_candidates()
        .into_iter()
        .map(|f| {
            let container = container_for(&f).unwrap_or_default();
            let dominated = !container.is_empty() && {
                let check = if f[0] == f[1] && f[1] == f[2] {
                    check_placed(wreath_base(f[0], 3), (f[0], &container))
                } else {
                    check_by_search(&format!("{}×{}×{}", f[0], f[1], f[2]), &container, true)
                };
                let product: u64 = f.iter().map(|x| groups::label_order(x).unwrap_or(0)).product();
                let bigger = groups::label_order(&container).is_ok_and(|c| c > product);
                check.passed() && bigger
            };
            TypeIICandidate { factors: f.map(String::from), container, dominated }
        })
        .collect()
}

/// Whether every product of three degree-one maximal groups sits strictly
/// inside a larger finite subgroup.
pub fn type_ii_exclusion() -> bool {
    type_ii_report().iter().all(|c| c.dominated)
}

/// A pair of records from one maximal list where one group embeds in the
/// other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub smaller: String,
    pub larger: String,
}

/// Pairwise non-containment inside each `(p, kind)` list. Pairs whose
/// larger group exceeds `bound` are skipped and counted.
pub fn antichain_violations(records: &[MaxSubgroupRecord], bound: usize) -> Result<(Vec<Containment>, usize)> {
    let mut found = Vec::new();
    let mut skipped = 0;
    for (i, a) in records.iter().enumerate() {
        for b in &records[i + 1..] {
            if (a.algebra, a.degree, a.kind) != (b.algebra, b.degree, b.kind) {
                continue;
            }
            let (oa, ob) = (groups::label_order(&a.group)?, groups::label_order(&b.group)?);
            let (s, l) = if oa <= ob { (a, b) } else { (b, a) };
            let (os, ol) = (oa.min(ob), oa.max(ob));
            if ol % os != 0 {
                continue;
            }
            if ol as usize > bound {
                skipped += 1;
                continue;
            }
            let g = groups::build(&s.group)?;
            let h = groups::build(&l.group)?;
            if embeds_bounded(&g, &h, bound)? {
                found.push(Containment { smaller: s.group.clone(), larger: l.group.clone() });
            }
        }
    }
    Ok((found, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_parses() {
        let d = QuatData::builtin();
        assert_eq!(d.gl1.len(), 5);
        assert_eq!(d.shapes.len(), 4);
        assert_eq!(d.gl3_primes(), vec![2, 3, 5, 7, 11, 13, 19, 31, 37, 43, 53, 71, 109, 241]);
    }

    #[test]
    fn algebra_labels() {
        assert_eq!(QuatAlg::Rational { p: 2 }.to_string(), "D_{2,∞}");
        assert_eq!(QuatAlg::RealQuadratic { d: 5 }.to_string(), "D_{√5,∞}");
        assert_eq!(QuatAlg::CubicTrace { n: 14, p: 7 }.to_string(), "D_{ζ14+ζ14^-1,∞,7}");
        assert!(QuatAlg::rational(9).is_err());
    }

    #[test]
    fn gl1_sets() {
        assert_eq!(gl1_maximal(2).unwrap(), ["T*"]);
        assert_eq!(gl1_maximal(71).unwrap(), ["C4", "C6"]);
        assert_eq!(gl1_maximal(37).unwrap(), ["C2"]);
        assert_eq!(gl1_maximal(5).unwrap(), ["C6"]);
    }

    #[test]
    fn type_ii_triples() {
        let c = type_ii_candidates();
        assert_eq!(c.len(), 7);
        assert!(c.iter().all(|f| container_for(f).is_some()));
    }

    #[test]
    fn inclusion_hint_small() {
        let c2 = groups::build("C2").unwrap();
        let w = c2.wreath_sym(3).unwrap();
        let base = power(&c2, 3).unwrap();
        let h = inclusion_hint(&base, &w).unwrap();
        assert!(embeds_with_hint(&base, &w, &h).unwrap());
    }
}
