//! Finite subgroups of `GL_3(K)` for `K = Q` or a real quadratic field.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;
use serde_json::Value;

use crate::arith::cyclo::{CycMat, CycloNum};
use crate::arith::nt::{divisors, euler_phi, is_squarefree, quadratic_in_cyclotomic};
use crate::arith::{Rat, Int};
use crate::groups::catalog::{parse_label, Label};
use crate::groups::chars::{char_inner_product, enveloping_dimension, mat_closure};
use crate::groups::{self, embeds};
use crate::{Error, Result};

/// Closure bound for matrix groups in this module.
pub const CLOSURE_LIMIT: usize = 10_000;

/// `K = Q(√d)`; `d = 1` is `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseField {
    pub d: u64,
}

impl BaseField {
    pub fn new(d: u64) -> Result<BaseField> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::Invalid(format!("d = {d} must be a positive squarefree integer")));
        }
        Ok(BaseField { d })
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    /// `[K(ζ_N) : K]`.
    pub fn zeta_degree(&self, n: u64) -> u64 {
        let phi = euler_phi(n);
        if !self.is_rational() && quadratic_in_cyclotomic(self.d as i64, n) {
            phi / 2
        } else {
            phi
        }
    }
}

/// Diagonalizable abelian subgroups up to the case split on their exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalClass {
    /// A subgroup of `⟨-I_3, diag(1,1,-1)⟩`.
    SubA,
    /// `⟨diag(-1,-1,1), diag(1,-1,-1)⟩`.
    B,
    /// `B` together with `-I_3`.
    BWithMinusI,
    /// Contains an element with eigenvalue a primitive `N`-th root of unity.
    Cyclic(u64),
}

fn feasible(k: &BaseField, n: u64, budget: u64) -> bool {
    // some divisors of n with lcm n and total K-degree at most the budget
    fn go(k: &BaseField, n: u64, cur: u64, budget: u64, divs: &[u64]) -> bool {
        if cur == n {
            return true;
        }
        divs.iter().any(|&m| {
            let deg = k.zeta_degree(m);
            let next = num_integer::lcm(cur, m);
            deg <= budget && next != cur && go(k, n, next, budget - deg, divs)
        })
    }
    let divs: Vec<u64> = divisors(n).into_iter().filter(|&m| m > 1).collect();
    go(k, n, 1, budget, &divs)
}

/// Exponents `N > 2` of finite abelian subgroups of `GL_3(K)`.
pub fn allowed_exponents(k: &BaseField) -> BTreeSet<u64> {
    // φ(N) <= 6 bounds N by 18
    (3..=60).filter(|&n| feasible(k, n, 3)).collect()
}

pub fn diagonal_classes(k: &BaseField) -> Vec<DiagonalClass> {
    let mut out = vec![DiagonalClass::SubA, DiagonalClass::B, DiagonalClass::BWithMinusI];
    out.extend(allowed_exponents(k).into_iter().map(DiagonalClass::Cyclic));
    out
}

/// `G ↦ ⟨G, -I_3⟩` on generators.
pub fn gl3_from_sl3(gens: &[CycMat]) -> Vec<CycMat> {
    let n = gens.first().map_or(1, CycMat::conductor);
    let mut out = gens.to_vec();
    out.push(minus_identity(n));
    out
}

/// The abstract counterpart: `G_0 × C_2`.
pub fn gl3_from_sl3_label(g0: &str) -> Result<Label> {
    Ok(parse_label(g0)?.times(&parse_label("C2")?))
}

/// Elements of determinant one in the group generated by `gens`.
pub fn sl3_part(gens: &[CycMat]) -> Result<Vec<CycMat>> {
    let all = mat_closure(gens, CLOSURE_LIMIT)?;
    Ok(all.into_iter().filter(|m| m.det().as_rat().is_some_and(|r| r.is_one())).collect())
}

pub fn minus_identity(n: u64) -> CycMat {
    CycMat::identity(3, n).scale(&CycloNum::from_ints(n, &[-1]))
}

/// An entry of the maximal list for a base field.
#[derive(Clone, Debug)]
pub struct MaximalEntry {
    pub label: String,
    /// Set when the group embeds in another entry of the same list.
    pub contained_in: Option<String>,
}

/// Candidates for maximal finite subgroups of `GL_3(K)`: `C2≀Sym3`, `D_n×C2`
/// for even `n` with `ζ_n + ζ_n^-1 ∈ K`, and `Alt5×C2` for `d = 5`. Every
/// admissible `n` is returned; entries contained in another entry are
/// flagged.
pub fn maximal_gl3_list(k: &BaseField) -> Result<Vec<MaximalEntry>> {
    let mut labels = vec!["C2≀Sym3".to_string()];
    for n in allowed_exponents(k) {
        if n % 2 == 0 {
            labels.push(format!("D{n}×C2"));
        }
    }
    if k.d == 5 {
        labels.push("Alt5×C2".into());
    }
    let gs: Vec<_> = labels.iter().map(|l| groups::build(l)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let mut contained_in = None;
        for (j, other) in labels.iter().enumerate() {
            if i != j && gs[i].order() < gs[j].order() && embeds(&gs[i], &gs[j])? {
                contained_in = Some(other.clone());
                break;
            }
        }
        out.push(MaximalEntry { label: parse_label(l)?.to_string(), contained_in });
    }
    Ok(out)
}

/// `⟨χ, χ⟩ = 1` for the group generated by `gens`.
pub fn is_irreducible_3dim(gens: &[CycMat]) -> Result<bool> {
    let g = mat_closure(gens, CLOSURE_LIMIT)?;
    Ok(char_inner_product(&g)?.is_one())
}

pub fn enveloping_q_dimension(gens: &[CycMat]) -> Result<usize> {
    Ok(enveloping_dimension(&mat_closure(gens, CLOSURE_LIMIT)?))
}

/// Largest `m` with `m^2 | order` and `m | dim`.
pub fn schur_index_bound(order: u64, dim: u64) -> u64 {
    (1..=dim).rev().find(|&m| dim.is_multiple_of(m) && order.is_multiple_of(m * m)).unwrap_or(1)
}

fn block(a: &CycMat, c: CycloNum) -> CycMat {
    let n = num_integer::lcm(a.conductor(), c.conductor());
    let z = CycloNum::zero(n);
    let mut e = vec![z.clone(); 9];
    for i in 0..2 {
        for j in 0..2 {
            e[i * 3 + j] = a.get(i, j).clone();
        }
    }
    e[8] = c;
    CycMat::new(3, e)
}

/// `c = ζ_n + ζ_n^-1`.
pub fn zeta_trace(n: u64) -> CycloNum {
    &CycloNum::zeta(n, 1) + &CycloNum::zeta(n, -1)
}

/// Generators `A = [[0,1],[-1,c]]`, `B = [[1,0],[c,-1]]` of `D_n` in
/// `GL_2(Q(c))`, `c = ζ_n + ζ_n^-1`.
pub fn dihedral_2dim(n: u64) -> (CycMat, CycMat) {
    let c = zeta_trace(n);
    let k = |x: i64| CycloNum::from_ints(n, &[x]);
    let a = CycMat::new(2, vec![k(0), k(1), k(-1), c.clone()]);
    let b = CycMat::new(2, vec![k(1), k(0), c, k(-1)]);
    (a, b)
}

/// The dihedral model in `SL_3`: `A ⊕ 1`, `B ⊕ -1`.
pub fn dihedral_sl3(n: u64) -> Vec<CycMat> {
    let (a, b) = dihedral_2dim(n);
    vec![block(&a, CycloNum::one(n)), block(&b, CycloNum::from_ints(n, &[-1]))]
}

/// The dihedral model with `diag(1,1,-1)` adjoined, `D_n × C_2`.
pub fn dihedral_gl3(n: u64) -> Vec<CycMat> {
    let mut g = dihedral_sl3(n);
    g.push(CycMat::diag(vec![CycloNum::one(n), CycloNum::one(n), CycloNum::from_ints(n, &[-1])]));
    g
}

/// Signed permutation matrices generating `C2≀Sym3`.
pub fn signed_permutation_gens() -> Vec<CycMat> {
    vec![
        CycMat::from_ints(3, 1, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]),
        CycMat::from_ints(3, 1, &[0, 1, 0, 1, 0, 0, 0, 0, 1]),
        CycMat::from_ints(3, 1, &[0, 1, 0, 0, 0, 1, 1, 0, 0]),
    ]
}

/// The three generators of `F_60` in `GL_3(Q(ζ_5))`, written over
/// `Q(ζ_20)`. The factor `1/√5` uses the Gauss sum
/// `√5 = ζ5 + ζ5^4 - ζ5^2 - ζ5^3`.
pub fn f60_gens() -> Vec<CycMat> {
    const N: u64 = 20;
    let z = |k: i64| CycloNum::zeta(N, 4 * k);
    let k = |x: i64| CycloNum::from_ints(N, &[x]);
    let sqrt5 = &(&(&z(1) + &z(4)) - &z(2)) - &z(3);
    let inv_sqrt5 = sqrt5.inv().expect("nonzero");
    let c1 = &z(1) + &z(-1);
    let c2 = &z(2) + &z(-2);
    let d = CycMat::diag(vec![k(1), z(-1), z(1)]);
    let s = CycMat::new(3, vec![k(-1), k(0), k(0), k(0), k(0), k(-1), k(0), k(-1), k(0)]);
    let t = CycMat::new(3, vec![k(1), k(1), k(1), k(2), c2.clone(), c1.clone(), k(2), c1, c2]).scale(&inv_sqrt5);
    vec![d, s, t]
}

/// Parses a generator file: `{"conductor": N, "matrices": [[e11, e12, ...], ...]}`
/// with each entry a list of coefficients of `1, ζ_N, ζ_N^2, ...`, written
/// as integers or `"a/b"` strings. A matrix is a flat row-major list of
/// `dim^2` entries or a list of rows.
pub fn parse_generators_json(s: &str) -> Result<Vec<CycMat>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let n = v.get("conductor").and_then(Value::as_u64).ok_or(Error::Parse("missing conductor".into()))?;
    if n == 0 {
        return Err(Error::Parse("conductor must be positive".into()));
    }
    let mats = v.get("matrices").and_then(Value::as_array).ok_or(Error::Parse("missing matrices".into()))?;
    let coef = |x: &Value| -> Result<Rat> {
        match x {
            Value::Number(k) => k.as_i64().map(|k| Rat::from_integer(Int::from(k))).ok_or(Error::Parse("integer expected".into())),
            Value::String(t) => t.trim().parse::<Rat>().map_err(|_| Error::Parse(format!("bad rational {t:?}"))),
            _ => Err(Error::Parse("coefficient must be a number or string".into())),
        }
    };
    let entry = |x: &Value| -> Result<CycloNum> {
        let cs = x.as_array().ok_or(Error::Parse("entry must be a coefficient list".into()))?;
        Ok(CycloNum::new(n, cs.iter().map(coef).collect::<Result<_>>()?))
    };
    let mut out = Vec::new();
    for m in mats {
        let rows = m.as_array().ok_or(Error::Parse("matrix must be a list".into()))?;
        let flat: Vec<&Value> = if rows.iter().all(|r| r.as_array().is_some_and(|a| a.iter().all(Value::is_array))) {
            rows.iter().flat_map(|r| r.as_array().unwrap().iter()).collect()
        } else {
            rows.iter().collect()
        };
        let dim = (1..=8).find(|d| d * d == flat.len()).ok_or(Error::Parse("matrix is not square".into()))?;
        out.push(CycMat::new(dim, flat.into_iter().map(entry).collect::<Result<_>>()?));
    }
    if out.is_empty() {
        return Err(Error::Parse("no matrices".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nt::euler_phi;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn exponents() {
        let e = |d| allowed_exponents(&BaseField::new(d).unwrap());
        assert_eq!(e(1), set(&[3, 4, 6]));
        assert_eq!(e(5), set(&[3, 4, 5, 6, 10]));
        assert_eq!(e(7), set(&[3, 4, 6]));
        assert_eq!(e(2), set(&[3, 4, 6, 8]));
        assert_eq!(e(3), set(&[3, 4, 6, 12]));
        assert!(BaseField::new(8).is_err());
    }

    #[test]
    fn schur_bounds() {
        assert_eq!(schur_index_bound(120, 3), 1);
        assert_eq!(schur_index_bound(48, 3), 1);
        assert_eq!(schur_index_bound(36, 3), 3);
    }

    #[test]
    fn dihedral_model_relations() {
        for n in [4u64, 6, 8, 10, 12] {
            let (a, b) = dihedral_2dim(n);
            assert_eq!(a.det(), CycloNum::one(n));
            let g = mat_closure(&[a.clone(), b.clone()], 100).unwrap();
            assert_eq!(g.len() as u64, 2 * n);
            let bab = b.mul(&a).mul(&b);
            assert_eq!(bab, a.inverse().unwrap());
        }
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_3dim(&signed_permutation_gens()).unwrap());
        for n in [4, 6, 8] {
            assert!(!is_irreducible_3dim(&dihedral_sl3(n)).unwrap());
        }
        assert!(is_irreducible_3dim(&gl3_from_sl3(&f60_gens())).unwrap());
    }

    #[test]
    fn f60_orders() {
        assert_eq!(mat_closure(&f60_gens(), CLOSURE_LIMIT).unwrap().len(), 60);
        assert_eq!(mat_closure(&gl3_from_sl3(&f60_gens()), CLOSURE_LIMIT).unwrap().len(), 120);
    }

    #[test]
    fn enveloping_dimensions() {
        assert_eq!(enveloping_q_dimension(&signed_permutation_gens()).unwrap(), 9);
        for n in [4u64, 6, 8, 10, 12] {
            let deg = (euler_phi(n) / 2) as usize;
            assert_eq!(enveloping_q_dimension(&dihedral_gl3(n)).unwrap(), 4 * deg + 1, "n = {n}");
        }
        assert_eq!(enveloping_q_dimension(&gl3_from_sl3(&f60_gens())).unwrap(), 18);
    }

    #[test]
    fn sl3_roundtrip() {
        let sym4: Vec<CycMat> = sl3_part(&signed_permutation_gens()).unwrap();
        assert_eq!(sym4.len(), 24);
        let back = sl3_part(&gl3_from_sl3(&sym4[1..])).unwrap();
        assert_eq!(back.len(), 24);
        assert_eq!(gl3_from_sl3_label("Sym4").unwrap().to_string(), "Sym4×C2");
        assert_eq!(gl3_from_sl3_label("Alt5").unwrap().to_string(), "Alt5×C2");
        assert_eq!(gl3_from_sl3_label("C1").unwrap().to_string(), "C2");
    }

    #[test]
    fn maximal_lists() {
        let labels = |d| -> Vec<String> {
            maximal_gl3_list(&BaseField::new(d).unwrap()).unwrap().into_iter().map(|e| e.label).collect()
        };
        assert_eq!(labels(1), vec!["C2≀Sym3", "D4×C2", "D6×C2"]);
        assert!(labels(5).contains(&"Alt5×C2".to_string()));
        assert!(labels(2).contains(&"D8×C2".to_string()));
        let l1 = maximal_gl3_list(&BaseField::new(1).unwrap()).unwrap();
        assert_eq!(l1[1].contained_in.as_deref(), Some("C2≀Sym3"));
        assert_eq!(l1[2].contained_in, None);
    }

    #[test]
    fn generator_file() {
        let s = r#"{"conductor": 4, "matrices": [[[[0],[1]],[[-1],[0]]], [[0,1],[0],[0],["1/1"]]]}"#;
        let g = parse_generators_json(s).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].get(0, 0), &CycloNum::zeta(4, 1));
    }
}
