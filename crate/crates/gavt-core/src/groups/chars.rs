//! Exact characters of matrix groups over cyclotomic fields.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::{One, Zero};

use crate::arith::cyclo::{CycMat, CycloNum};
use crate::arith::linalg::rank;
use crate::arith::{rat, Rat};
use crate::{Error, Result};

/// All elements of the group generated by `gens`. Fails with `NotFinite`
/// once more than `limit` elements appear.
pub fn mat_closure(gens: &[CycMat], limit: usize) -> Result<Vec<CycMat>> {
    let dim = gens.first().map(CycMat::dim).ok_or(Error::Invalid("no generators".into()))?;
    let n = gens.iter().fold(1u64, |acc, g| num_integer::lcm(acc, g.conductor()));
    let gens: Vec<CycMat> = gens.iter().map(|g| g.lift(n)).collect();
    let id = CycMat::identity(dim, n);
    let mut seen: HashMap<Vec<Rat>, ()> = HashMap::new();
    seen.insert(id.flatten(), ());
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        for g in &gens {
            let y = elems[head].mul(g);
            if seen.insert(y.flatten(), ()).is_none() {
                if elems.len() >= limit {
                    return Err(Error::NotFinite(limit));
                }
                elems.push(y);
            }
        }
        head += 1;
    }
    Ok(elems)
}

fn check_closed(rep: &[CycMat]) -> Result<()> {
    let keys: hashbrown::HashSet<Vec<Rat>> = rep.iter().map(|m| m.flatten()).collect();
    let k = rep.len().min(6);
    for a in &rep[..k] {
        for b in &rep[..k] {
            if !keys.contains(&a.mul(b).flatten()) {
                return Err(Error::Invalid("matrices are not closed under multiplication".into()));
            }
        }
    }
    Ok(())
}

/// `(1/|G|) Σ χ_a(g) conj(χ_b(g))` for two representations listed over the
/// same group elements in the same order.
pub fn char_pairing(a: &[CycMat], b: &[CycMat]) -> Result<Rat> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Invalid("representations must list the same elements".into()));
    }
    let ta: Vec<CycloNum> = a.iter().map(CycMat::trace).collect();
    let tb: Vec<CycloNum> = b.iter().map(CycMat::trace).collect();
    pair_values(&ta, &tb)
}

/// The same pairing for character values given directly.
pub fn pair_values(a: &[CycloNum], b: &[CycloNum]) -> Result<Rat> {
    let mut s = CycloNum::zero(1);
    for (x, y) in a.iter().zip(b) {
        s = &s + &(x * &y.conj());
    }
    let r = s.as_rat().ok_or(Error::NotRational)?;
    Ok(r / rat(a.len() as i64))
}

/// `⟨χ, χ⟩` of the representation whose images are the listed matrices,
/// one per group element.
pub fn char_inner_product(rep: &[CycMat]) -> Result<Rat> {
    check_closed(rep)?;
    char_pairing(rep, rep)
}

/// Dimension over `Q` of the algebra spanned by the given group elements.
pub fn enveloping_dimension(elems: &[CycMat]) -> usize {
    let n = elems.iter().fold(1u64, |acc, g| num_integer::lcm(acc, g.conductor()));
    let rows: Vec<Vec<Rat>> = elems.iter().map(|m| m.lift(n).flatten()).collect();
    rank(&rows)
}

/// A character of `D_n` (order `2n`), elements written `α^m β^e`.
#[derive(Clone, Debug)]
pub struct DihedralChar {
    pub name: String,
    pub degree: u32,
    /// Values at `α^m β^e`, index `2m + e`.
    pub values: Vec<CycloNum>,
}

#[derive(Clone, Debug)]
pub struct DihedralCharTable {
    pub n: u32,
    pub chars: Vec<DihedralChar>,
}

/// Irreducible characters of the dihedral group of order `2n`, `n` even:
/// four linear characters and `n/2 - 1` of degree two.
pub fn dihedral_char_table(n: u32) -> Result<DihedralCharTable> {
    if !n.is_multiple_of(2) || n <= 2 {
        return Err(Error::Invalid(format!("dihedral table needs even n > 2, got {n}")));
    }
    let nn = n as u64;
    let mut chars = Vec::new();
    for (x, y) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let values = (0..n)
            .flat_map(|m| {
                let a = if m % 2 == 1 { x } else { 1 };
                [CycloNum::from_ints(nn, &[a]), CycloNum::from_ints(nn, &[a * y])]
            })
            .collect();
        chars.push(DihedralChar { name: format!("chi[{x},{y}]"), degree: 1, values });
    }
    for u in 1..n / 2 {
        let values = (0..n)
            .flat_map(|m| {
                let k = (m * u) as i64;
                [&CycloNum::zeta(nn, k) + &CycloNum::zeta(nn, -k), CycloNum::zero(nn)]
            })
            .collect();
        chars.push(DihedralChar { name: format!("chi_{u}"), degree: 2, values });
    }
    Ok(DihedralCharTable { n, chars })
}

impl DihedralCharTable {
    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.chars.iter().map(|c| c.degree).collect()
    }

    /// Gram matrix of the characters under the standard pairing.
    pub fn gram(&self) -> Result<Vec<Vec<Rat>>> {
        self.chars
            .iter()
            .map(|a| self.chars.iter().map(|b| pair_values(&a.values, &b.values)).collect())
            .collect()
    }

    /// Characters of `D_n × C_2`: each character tensored with the two
    /// characters of `C_2`. Values indexed `2·(2m + e) + c`.
    pub fn times_c2(&self) -> DihedralCharTable {
        let mut chars = Vec::new();
        for ch in &self.chars {
            for sign in [1i64, -1] {
                let values = ch
                    .values
                    .iter()
                    .flat_map(|v| [v.clone(), &CycloNum::from_ints(1, &[sign]) * v])
                    .collect();
                let tag = if sign == 1 { "+" } else { "-" };
                chars.push(DihedralChar { name: format!("{}{tag}", ch.name), degree: ch.degree, values });
            }
        }
        DihedralCharTable { n: self.n, chars }
    }

    /// Whether the table is an orthonormal system whose squared degrees
    /// add up to the group order.
    pub fn is_complete(&self) -> Result<bool> {
        let g = self.gram()?;
        let orthonormal = g.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        });
        let total: usize = self.degrees().iter().map(|&d| (d * d) as usize).sum();
        let order = self.chars.first().map_or(0, |c| c.values.len());
        Ok(orthonormal && total == order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed_perm_mats() -> Vec<CycMat> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::new();
        for p in perms {
            for s in 0..8 {
                let mut e = [0i64; 9];
                for i in 0..3 {
                    e[i * 3 + p[i]] = if s >> i & 1 == 1 { -1 } else { 1 };
                }
                out.push(CycMat::from_ints(3, 1, &e));
            }
        }
        out
    }

    #[test]
    fn signed_permutations_irreducible() {
        let g = signed_perm_mats();
        assert_eq!(g.len(), 48);
        assert_eq!(char_inner_product(&g).unwrap(), rat(1));
        assert_eq!(enveloping_dimension(&g), 9);
    }

    #[test]
    fn diagonal_c6() {
        let d = CycMat::diag(vec![CycloNum::zeta(6, -1), CycloNum::zeta(6, 1), CycloNum::one(6)]);
        let g = mat_closure(&[d], 100).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(char_inner_product(&g).unwrap(), rat(3));
    }

    #[test]
    fn trivial_rep() {
        let g = vec![CycMat::identity(1, 1)];
        assert_eq!(char_inner_product(&g).unwrap(), rat(1));
    }

    #[test]
    fn dihedral_tables() {
        let t4 = dihedral_char_table(4).unwrap();
        assert_eq!(t4.degrees(), vec![1, 1, 1, 1, 2]);
        let t6 = dihedral_char_table(6).unwrap();
        assert_eq!(t6.degrees(), vec![1, 1, 1, 1, 2, 2]);
        for n in [4, 6, 8, 10, 12] {
            let t = dihedral_char_table(n).unwrap();
            assert!(t.is_complete().unwrap());
            let t2 = t.times_c2();
            assert!(t2.is_complete().unwrap());
            assert_eq!(t2.degrees().into_iter().max(), Some(2));
        }
        assert!(dihedral_char_table(5).is_err());
    }

    #[test]
    fn infinite_generator_detected() {
        let m = CycMat::from_ints(2, 1, &[1, 1, 0, 1]);
        assert!(matches!(mat_closure(&[m], 50), Err(Error::NotFinite(50))));
    }
}
