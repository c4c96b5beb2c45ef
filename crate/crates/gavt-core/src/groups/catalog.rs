//! Group labels and the catalog of named groups.
//!
//! A label is a direct product of atoms. Atoms are the parametrized
//! families (`C12`, `D6`, `Dic28`, `Sym4`, `Alt5`, `G(7,2)`), wreath products
//! `X≀Symk`, powers `X^k` (expanded), and named catalog groups. Products
//! are flattened and sorted by decreasing order, so two spellings of the
//! same product get the same canonical string.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::build::{self, BUILTINS};
use super::FinGroup;
use crate::amitsur::{group_label, GmrParams};
use crate::{Error, Result};

pub const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub order: u64,
    pub recipe: String,
}

impl CatalogEntry {
    /// Entries whose recipe is their own label only register aliases for a
    /// structural label such as a wreath product.
    fn is_structural(&self) -> bool {
        self.recipe == self.label
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    groups: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Cyclic(u32),
    /// Dihedral of order `2n`.
    Dihedral(u32),
    /// Dicyclic of the given order.
    Dic(u32),
    Sym(u32),
    Alt(u32),
    Gmr(u64, u64),
    Named(String, u64),
    Wreath(Box<Atom>, u32),
}

impl Atom {
    pub fn order(&self) -> u64 {
        match self {
            Atom::Cyclic(n) => *n as u64,
            Atom::Dihedral(n) => 2 * *n as u64,
            Atom::Dic(n) => *n as u64,
            Atom::Sym(n) => (1..=*n as u64).product(),
            Atom::Alt(n) => (1..=*n as u64).product::<u64>() / 2,
            Atom::Gmr(m, r) => GmrParams::new(*m, *r as i64).map(|p| p.order()).unwrap_or(0),
            Atom::Named(_, o) => *o,
            Atom::Wreath(b, k) => b.order().pow(*k) * (1..=*k as u64).product::<u64>(),
        }
    }

    fn is_trivial(&self) -> bool {
        *self == Atom::Cyclic(1)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Dic(8) => write!(f, "Q8"),
            Atom::Dic(n) => write!(f, "Dic{n}"),
            Atom::Sym(n) => write!(f, "Sym{n}"),
            Atom::Alt(n) => write!(f, "Alt{n}"),
            Atom::Gmr(m, r) => write!(f, "G({m},{r})"),
            Atom::Named(s, _) => write!(f, "{s}"),
            Atom::Wreath(b, k) => write!(f, "{b}≀Sym{k}"),
        }
    }
}

/// Canonical group identifier: a sorted direct product of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub atoms: Vec<Atom>,
}

impl Label {
    fn from_atoms(mut atoms: Vec<Atom>) -> Label {
        atoms.retain(|a| !a.is_trivial());
        if atoms.is_empty() {
            atoms.push(Atom::Cyclic(1));
        }
        atoms.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.to_string().cmp(&b.to_string())));
        Label { atoms }
    }

    pub fn order(&self) -> u64 {
        self.atoms.iter().map(Atom::order).product()
    }

    /// Direct product of two labels.
    pub fn times(&self, other: &Label) -> Label {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Label::from_atoms(atoms)
    }

    pub fn factors(&self) -> Vec<Label> {
        self.atoms.iter().map(|a| Label { atoms: vec![a.clone()] }).collect()
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains(['⋊', ':', '.', '≀', '·', '×'])
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = self.atoms.len() > 1;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            let s = a.to_string();
            if multi && needs_parens(&s) {
                write!(f, "({s})")?;
            } else {
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// Lookup key: spacing, braces and underscores dropped, ASCII spellings
/// mapped to the Unicode operators.
pub fn normalize(s: &str) -> String {
    let s = s
        .replace(" x ", "×")
        .replace(" X ", "×")
        .replace("\\times", "×")
        .replace("\\rtimes", "⋊")
        .replace("\\wr", "≀")
        .replace(" wr ", "≀")
        .replace("><", "⋊")
        .replace("+-", "±")
        .replace('−', "-")
        .replace('𝔗', "T")
        .replace('𝔒', "O")
        .replace('𝔍', "I");
    s.chars().filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '_')).collect()
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    keys: HashMap<String, usize>,
    pub version: u32,
}

fn strip_outer(s: &str) -> &str {
    let mut s = s;
    loop {
        let b = s.as_bytes();
        if b.len() < 2 {
            return s;
        }
        let (open, close) = match b[0] {
            b'(' => (b'(', b')'),
            b'[' => (b'[', b']'),
            _ => return s,
        };
        let mut depth = 0i32;
        let mut matched_at = None;
        for (i, &c) in b.iter().enumerate() {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    matched_at = Some(i);
                    break;
                }
            }
        }
        if matched_at == Some(b.len() - 1) {
            s = &s[1..s.len() - 1];
        } else {
            return s;
        }
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn num(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Catalog {
    pub fn from_json(json: &str) -> Result<Catalog> {
        let file: CatalogFile = serde_json::from_str(json).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
        let mut keys = HashMap::new();
        for (i, e) in file.groups.iter().enumerate() {
            for name in core::iter::once(&e.label).chain(e.aliases.iter()) {
                if let Some(j) = keys.insert(normalize(name), i) {
                    if j != i {
                        return Err(Error::Parse(format!("catalog: duplicate key {name}")));
                    }
                }
            }
        }
        let cat = Catalog { entries: file.groups, keys, version: file.version };
        for e in &cat.entries {
            if !e.is_structural() && !BUILTINS.contains(&e.recipe.as_str()) {
                cat.parse(&e.recipe)?;
            }
            let o = if e.is_structural() { cat.parse_structural(&e.label)?.order() } else { e.order };
            if o != e.order {
                return Err(Error::Parse(format!("catalog: order of {} is {o}, listed {}", e.label, e.order)));
            }
        }
        Ok(cat)
    }

    pub fn builtin() -> Catalog {
        Catalog::from_json(CATALOG_JSON).expect("bundled catalog is valid")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, label: &str) -> Option<&CatalogEntry> {
        self.keys.get(&normalize(label)).map(|&i| &self.entries[i])
    }

    pub fn parse(&self, s: &str) -> Result<Label> {
        let atoms = self.parse_expr(&normalize(s), s)?;
        Ok(Label::from_atoms(atoms))
    }

    fn parse_structural(&self, s: &str) -> Result<Label> {
        let n = normalize(s);
        Ok(Label::from_atoms(self.parse_product(strip_outer(&n), s)?))
    }

    fn parse_expr(&self, s: &str, orig: &str) -> Result<Vec<Atom>> {
        let s = strip_outer(s);
        if let Some(&i) = self.keys.get(s) {
            let e = &self.entries[i];
            return if e.is_structural() {
                Ok(self.parse_structural(&e.label)?.atoms)
            } else {
                Ok(vec![Atom::Named(e.label.clone(), e.order)])
            };
        }
        self.parse_product(s, orig)
    }

    fn parse_product(&self, s: &str, orig: &str) -> Result<Vec<Atom>> {
        let parts = split_top(s, '×');
        if parts.len() > 1 {
            let mut atoms = Vec::new();
            for p in parts {
                atoms.extend(self.parse_expr(p, orig)?);
            }
            return Ok(atoms);
        }
        self.parse_atom(s, orig)
    }

    fn parse_atom(&self, s: &str, orig: &str) -> Result<Vec<Atom>> {
        let unknown = || Error::UnknownLabel(orig.to_owned());
        if let Some(pos) = s.rfind('≀') {
            let (base, top) = (&s[..pos], &s[pos + '≀'.len_utf8()..]);
            let k = top.strip_prefix("Sym").and_then(num).ok_or_else(unknown)?;
            let mut b = self.parse_expr(base, orig)?;
            if b.len() != 1 {
                return Err(unknown());
            }
            return Ok(vec![Atom::Wreath(Box::new(b.remove(0)), k)]);
        }
        if let Some(pos) = s.rfind('^') {
            if let Some(k) = num(&s[pos + 1..]) {
                let base = self.parse_expr(&s[..pos], orig)?;
                return Ok((0..k).flat_map(|_| base.iter().cloned()).collect());
            }
        }
        if let Some(n) = s.strip_prefix("Dic").and_then(num) {
            return match n {
                4 => Ok(vec![Atom::Cyclic(4)]),
                n if n % 4 == 0 && n > 0 => Ok(vec![Atom::Dic(n)]),
                _ => Err(Error::Invalid(format!("Dic{n}: order must be a multiple of 4"))),
            };
        }
        if s == "Q8" {
            return Ok(vec![Atom::Dic(8)]);
        }
        if let Some(n) = s.strip_prefix('C').and_then(num) {
            return if n == 0 { Err(unknown()) } else { Ok(vec![Atom::Cyclic(n)]) };
        }
        if let Some(n) = s.strip_prefix('D').and_then(num) {
            return match n {
                0 => Err(unknown()),
                1 => Ok(vec![Atom::Cyclic(2)]),
                n => Ok(vec![Atom::Dihedral(n)]),
            };
        }
        if let Some(n) = s.strip_prefix("Sym").and_then(num) {
            return Ok(vec![match n {
                0 | 1 => Atom::Cyclic(1),
                2 => Atom::Cyclic(2),
                n => Atom::Sym(n),
            }]);
        }
        if let Some(n) = s.strip_prefix("Alt").and_then(num) {
            return Ok(vec![match n {
                0..=2 => Atom::Cyclic(1),
                3 => Atom::Cyclic(3),
                n => Atom::Alt(n),
            }]);
        }
        if let Some(inner) = s.strip_prefix("G(").and_then(|t| t.strip_suffix(')')) {
            let mr: Vec<&str> = inner.split(',').collect();
            if mr.len() == 2 {
                let m: u64 = mr[0].parse().map_err(|_| unknown())?;
                let r: i64 = mr[1].parse().map_err(|_| unknown())?;
                let p = GmrParams::new(m, r)?;
                let name = group_label(&p);
                if name.starts_with("G(") {
                    return Ok(vec![Atom::Gmr(p.m, p.r)]);
                }
                return self.parse_expr(&name, orig);
            }
        }
        Err(unknown())
    }

    /// Canonical spelling of a label.
    pub fn canonical(&self, s: &str) -> Result<String> {
        Ok(self.parse(s)?.to_string())
    }

    pub fn build_label(&self, l: &Label) -> Result<FinGroup> {
        let mut acc: Option<FinGroup> = None;
        for a in &l.atoms {
            let g = self.build_atom(a)?;
            acc = Some(match acc {
                None => g,
                Some(h) => h.direct_product(&g)?,
            });
        }
        Ok(acc.expect("labels have at least one atom"))
    }

    pub fn build(&self, s: &str) -> Result<FinGroup> {
        self.build_label(&self.parse(s)?)
    }

    fn build_atom(&self, a: &Atom) -> Result<FinGroup> {
        match a {
            Atom::Cyclic(n) => build::cyclic(*n),
            Atom::Dihedral(n) => build::dihedral(*n),
            Atom::Dic(n) => build::dicyclic(*n),
            Atom::Sym(n) => build::symmetric(*n),
            Atom::Alt(n) => build::alternating(*n),
            Atom::Gmr(m, r) => build::gmr(&GmrParams::new(*m, *r as i64)?),
            Atom::Wreath(b, k) => self.build_atom(b)?.wreath_sym(*k as usize),
            Atom::Named(s, _) => {
                let e = self.entry(s).ok_or_else(|| Error::UnknownLabel(s.clone()))?;
                if BUILTINS.contains(&e.recipe.as_str()) {
                    build::builtin(&e.recipe)
                } else {
                    self.build(&e.recipe)
                }
            }
        }
    }
}

/// Parses with the bundled catalog.
pub fn parse_label(s: &str) -> Result<Label> {
    Catalog::builtin().parse(s)
}

pub fn canonical_label(s: &str) -> Result<String> {
    Catalog::builtin().canonical(s)
}

pub fn label_order(s: &str) -> Result<u64> {
    Ok(parse_label(s)?.order())
}

/// Builds a group from its label with the bundled catalog.
pub fn build(s: &str) -> Result<FinGroup> {
    Catalog::builtin().build(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_spellings() {
        let c = Catalog::builtin();
        assert_eq!(c.canonical("SL2(F3)").unwrap(), "T*");
        assert_eq!(c.canonical("SL_2(F_3) x Sym_3").unwrap(), "T*×Sym3");
        assert_eq!(c.canonical("C2 x T* x C6").unwrap(), "T*×C6×C2");
        assert_eq!(c.canonical("[(Q8⋊C3)⋊C2]×C2").unwrap(), "GL2(F3)×C2");
        assert_eq!(c.canonical("[(Q8⋊C3)×C3]×C6").unwrap(), "T*×C6×C3");
        assert_eq!(c.canonical("C2^3⋊Sym3").unwrap(), "C2≀Sym3");
        assert_eq!(c.canonical("(SL2(F3))^2⋊Sym2").unwrap(), "T*≀Sym2");
        assert_eq!(c.canonical("Dic8").unwrap(), "Q8");
        assert_eq!(c.canonical("Dic4").unwrap(), "C4");
        assert_eq!(c.canonical("G(6,5)").unwrap(), "Dic12");
        assert_eq!(c.canonical("(C12⋊C2)×C4").unwrap(), "(C12⋊C2)×C4");
        assert_eq!(c.canonical("T*^3").unwrap(), "T*×T*×T*");
        assert_eq!(c.canonical("D1").unwrap(), "C2");
    }

    #[test]
    fn orders() {
        let c = Catalog::builtin();
        assert_eq!(c.parse("SL2(F3)≀Sym3").unwrap().order(), 82944);
        assert_eq!(c.parse("D6×C2").unwrap().order(), 24);
        assert_eq!(c.parse("±U3(3)").unwrap().order(), 12096);
    }

    #[test]
    fn unknown_labels() {
        let c = Catalog::builtin();
        assert!(matches!(c.parse("Foo7"), Err(Error::UnknownLabel(_))));
        assert!(matches!(c.parse("C0"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn roundtrip_display() {
        let c = Catalog::builtin();
        for e in c.entries() {
            let l = c.parse(&e.label).unwrap();
            assert_eq!(c.parse(&l.to_string()).unwrap(), l);
        }
    }
}
