//! Finite groups as permutation groups.
//!
//! Every group is stored with its full element list. Elements are
//! permutations of `0..degree` composed left to right: `a * b` applies `a`
//! first. Matrix groups over small finite fields are turned into permutation
//! groups through their action on vectors, and abstract groups through the
//! regular representation, so one engine serves every construction.

pub mod build;
pub mod catalog;
pub mod chars;
pub mod gf;
pub mod search;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use hashbrown::HashMap;

use crate::arith::nt::{factorize, lcm};
use crate::{Error, Result};

pub use catalog::{build, canonical_label, label_order, Label};
pub use search::{embeds, embeds_with_hint, is_isomorphic, DEFAULT_ORDER_BOUND};

/// Upper bound on the size of any group the engine materializes.
pub const MAX_ELEMENTS: usize = 200_000;

pub type Perm = Box<[u16]>;

/// Conjugacy classes: class index per element, a representative and the
/// size of each class.
#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
}

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<u32, usize>,
    pub center_order: usize,
    pub abelian_invariants: Vec<u64>,
    /// Multiset of (element order, class size) over the conjugacy classes.
    pub class_profile: Vec<(u32, usize)>,
}

#[derive(Clone)]
pub struct FinGroup {
    degree: usize,
    gens: Vec<u32>,
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    orders: Vec<u32>,
    classes: OnceCell<Classes>,
    derived: OnceCell<Vec<u32>>,
}

impl core::fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FinGroup").field("order", &self.order()).field("degree", &self.degree).finish()
    }
}

fn compose(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn perm_order(p: &[u16]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut o = 1u64;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        o = lcm(o, len);
    }
    o as u32
}

impl FinGroup {
    /// Closure of the given permutations of `0..degree`.
    pub fn generate(degree: usize, gens: Vec<Vec<u16>>) -> Result<FinGroup> {
        Self::generate_bounded(degree, gens, MAX_ELEMENTS)
    }

    pub fn generate_bounded(degree: usize, gens: Vec<Vec<u16>>, limit: usize) -> Result<FinGroup> {
        assert!(degree <= u16::MAX as usize, "degree too large");
        let id: Perm = (0..degree as u16).collect();
        let gens: Vec<Perm> = gens
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), degree, "generator degree");
                g.into_boxed_slice()
            })
            .filter(|g| **g != *id)
            .collect();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elems.len() {
            for g in &gens {
                let y = compose(&elems[head], g);
                if !index.contains_key(&y) {
                    if elems.len() >= limit {
                        return Err(Error::TooLarge(limit));
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
            head += 1;
        }
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        let orders = elems.iter().map(|p| perm_order(p)).collect();
        Ok(FinGroup {
            degree,
            gens: gen_idx,
            elems,
            index,
            orders,
            classes: OnceCell::new(),
            derived: OnceCell::new(),
        })
    }

    /// Right regular representation of the group generated by `gens` under
    /// `mul`, for abstract element types.
    pub fn regular<T, F>(identity: T, gens: &[T], mul: F) -> Result<FinGroup>
    where
        T: Clone + Eq + core::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elems.len() {
            for g in gens {
                let y = mul(&elems[head], g);
                if !index.contains_key(&y) {
                    if elems.len() >= 20_000 {
                        return Err(Error::TooLarge(20_000));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            head += 1;
        }
        let n = elems.len();
        let perms = gens
            .iter()
            .map(|g| (0..n).map(|i| index[&mul(&elems[i], g)] as u16).collect())
            .collect();
        FinGroup::generate(n, perms)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Indices of the generators the group was built from.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn elem(&self, i: u32) -> &[u16] {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, p: &[u16]) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = compose(&self.elems[a as usize], &self.elems[b as usize]);
        self.index[&p]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let p = &self.elems[a as usize];
        let mut q = vec![0u16; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j as usize] = i as u16;
        }
        self.index[q.as_slice()]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let k = k % self.orders[a as usize] as u64;
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// `a^-1 b a`.
    pub fn conj(&self, b: u32, a: u32) -> u32 {
        self.mul(self.mul(self.inv(a), b), a)
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    pub fn center_order(&self) -> usize {
        self.center().len()
    }

    /// Conjugacy classes, computed once by orbit enumeration under the
    /// generators.
    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order();
            let inv_gens: Vec<u32> = self.gens.iter().map(|&g| self.inv(g)).collect();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let c = reps.len() as u32;
                reps.push(start as u32);
                class_of[start] = c;
                let mut stack = vec![start as u32];
                let mut size = 1;
                while let Some(x) = stack.pop() {
                    for (k, &g) in self.gens.iter().enumerate() {
                        let y = self.mul(self.mul(inv_gens[k], x), g);
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = c;
                            size += 1;
                            stack.push(y);
                        }
                    }
                }
                sizes.push(size);
            }
            Classes { class_of, reps, sizes }
        })
    }

    /// Order of the centralizer of `a`.
    pub fn centralizer_order(&self, a: u32) -> usize {
        let cl = self.classes();
        self.order() / cl.sizes[cl.class_of[a as usize] as usize]
    }

    /// Membership mask of the subgroup generated by `seeds`.
    pub fn subgroup(&self, seeds: &[u32]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &s in seeds {
                let y = self.mul(x, s);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        mask
    }

    pub fn subgroup_order(&self, seeds: &[u32]) -> usize {
        self.subgroup(seeds).iter().filter(|&&b| b).count()
    }

    /// Elements of the derived subgroup.
    pub fn derived_subgroup(&self) -> &[u32] {
        self.derived.get_or_init(|| {
            let mut seeds = Vec::new();
            for (i, &a) in self.gens.iter().enumerate() {
                for &b in &self.gens[i + 1..] {
                    let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                    if c != 0 {
                        seeds.push(c);
                    }
                }
            }
            loop {
                let mask = self.subgroup(&seeds);
                let mut added = false;
                let current = seeds.clone();
                for &d in &current {
                    for &g in &self.gens {
                        let c = self.conj(d, g);
                        if !mask[c as usize] && !seeds.contains(&c) {
                            seeds.push(c);
                            added = true;
                        }
                    }
                }
                if !added {
                    return (0..self.order() as u32).filter(|&x| mask[x as usize]).collect();
                }
            }
        })
    }

    /// Invariants of `G / G'` as prime powers, ascending.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        let n = self.order();
        let mut in_d = vec![false; n];
        for &x in d {
            in_d[x as usize] = true;
        }
        let mut coset = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &y in d {
                coset[self.mul(x, y) as usize] = c;
            }
        }
        let quotient = reps.len() as u64;
        let qorders: Vec<u64> = reps
            .iter()
            .map(|&x| {
                let mut k = 1u64;
                let mut y = x;
                while !in_d[y as usize] {
                    y = self.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        let mut inv = Vec::new();
        for (p, _) in factorize(quotient) {
            // N_j = #{elements of order dividing p^j} = p^{sum_i min(j, e_i)}
            let mut prev_log = 0u32;
            let mut counts = Vec::new();
            let mut j = 1u32;
            loop {
                let pj = p.pow(j);
                let nj = qorders.iter().filter(|&&o| pj % o == 0).count() as u64;
                let mut log = 0u32;
                let mut t = nj;
                while t > 1 {
                    t /= p;
                    log += 1;
                }
                counts.push(log - prev_log);
                if log == prev_log {
                    break;
                }
                prev_log = log;
                j += 1;
            }
            // counts[j-1] = #{i : e_i >= j}
            for j in 0..counts.len() {
                let ge = counts[j];
                let ge_next = counts.get(j + 1).copied().unwrap_or(0);
                for _ in 0..ge - ge_next {
                    inv.push(p.pow(j as u32 + 1));
                }
            }
        }
        inv.sort_unstable();
        inv
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let cl = self.classes();
        let mut class_profile: Vec<(u32, usize)> =
            cl.reps.iter().zip(&cl.sizes).map(|(&r, &s)| (self.element_order(r), s)).collect();
        class_profile.sort_unstable();
        Fingerprint {
            order: self.order(),
            order_histogram: self.order_histogram(),
            center_order: self.center_order(),
            abelian_invariants: self.abelian_invariants(),
            class_profile,
        }
    }

    /// The generating permutations.
    pub fn gen_perms(&self) -> Vec<Vec<u16>> {
        self.gens.iter().map(|&g| self.elem(g).to_vec()).collect()
    }

    /// A short generating set: elements of largest order first, each added
    /// only when it enlarges the subgroup generated so far. A generating
    /// pair is preferred when one is found among the first candidates.
    pub fn small_gens(&self) -> Vec<u32> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        let mut by_order: Vec<u32> = (0..n as u32).collect();
        by_order.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        if self.element_order(by_order[0]) as usize == n {
            return vec![by_order[0]];
        }
        let cl = self.classes();
        let mut reps: Vec<u32> = cl.reps.clone();
        reps.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        let budget = if n <= 2000 { 4000 } else { 400 };
        let mut tried = 0;
        for &x in reps.iter().take(3) {
            for &y in &by_order {
                if tried >= budget {
                    break;
                }
                tried += 1;
                if self.subgroup_order(&[x, y]) == n {
                    return vec![x, y];
                }
            }
        }
        let mut gens: Vec<u32> = Vec::new();
        let mut mask = vec![false; n];
        mask[0] = true;
        for &x in &by_order {
            if !mask[x as usize] {
                gens.push(x);
                mask = self.subgroup(&gens);
            }
        }
        gens
    }
}

impl FinGroup {
    /// Direct product acting on the disjoint union of the point sets.
    pub fn direct_product(&self, other: &FinGroup) -> Result<FinGroup> {
        let (d1, d2) = (self.degree, other.degree);
        let mut gens = Vec::new();
        for g in self.gen_perms() {
            let mut p: Vec<u16> = g;
            p.extend((d1..d1 + d2).map(|i| i as u16));
            gens.push(p);
        }
        for g in other.gen_perms() {
            let mut p: Vec<u16> = (0..d1 as u16).collect();
            p.extend(g.iter().map(|&i| i + d1 as u16));
            gens.push(p);
        }
        FinGroup::generate(d1 + d2, gens)
    }

    /// `self ≀ Sym_k`, acting on `k` blocks of the points of `self`.
    pub fn wreath_sym(&self, k: usize) -> Result<FinGroup> {
        let d = self.degree;
        let n = d * k;
        let mut gens = Vec::new();
        for g in self.gen_perms() {
            let mut p: Vec<u16> = (0..n as u16).collect();
            p[..d].copy_from_slice(&g);
            gens.push(p);
        }
        if k >= 2 {
            let block = |b: usize, i: usize| (b * d + i) as u16;
            let mut swap: Vec<u16> = (0..n as u16).collect();
            let mut cyc: Vec<u16> = (0..n as u16).collect();
            for i in 0..d {
                swap[i] = block(1, i);
                swap[d + i] = block(0, i);
                for b in 0..k {
                    cyc[b * d + i] = block((b + 1) % k, i);
                }
            }
            gens.push(swap);
            gens.push(cyc);
        }
        FinGroup::generate(n, gens)
    }

    /// Extends a generator assignment to a map on all elements of `self`
    /// (targets in `other`). Returns `None` when the assignment is not a
    /// homomorphism.
    pub fn extend_hom(&self, src_gens: &[u32], other: &FinGroup, images: &[u32]) -> Option<Vec<u32>> {
        let n = self.order();
        let mut phi = vec![u32::MAX; n];
        phi[0] = 0;
        let mut queue = vec![0u32];
        let mut head = 0;
        let mut reached = 1;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (k, &g) in src_gens.iter().enumerate() {
                let y = self.mul(x, g);
                let img = other.mul(phi[x as usize], images[k]);
                match phi[y as usize] {
                    u32::MAX => {
                        phi[y as usize] = img;
                        reached += 1;
                        queue.push(y);
                    }
                    v if v != img => return None,
                    _ => {}
                }
            }
        }
        if reached != n {
            return None;
        }
        // consistency on the remaining edges was checked above for every
        // (x, generator) pair, so phi is a homomorphism
        Some(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u16) -> FinGroup {
        FinGroup::generate(n as usize, vec![(0..n).map(|i| (i + 1) % n).collect()]).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let g = cyclic(12);
        assert_eq!(g.order(), 12);
        assert!(g.is_abelian());
        assert_eq!(g.abelian_invariants(), vec![3, 4]);
        assert_eq!(g.exponent(), 12);
        assert_eq!(g.small_gens().len(), 1);
    }

    #[test]
    fn sym4_invariants() {
        let g = FinGroup::generate(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.center_order(), 1);
        assert_eq!(g.derived_subgroup().len(), 12);
        assert_eq!(g.abelian_invariants(), vec![2]);
        assert_eq!(g.classes().reps.len(), 5);
        let h = g.order_histogram();
        assert_eq!(h[&2], 9);
        assert_eq!(h[&3], 8);
        assert_eq!(h[&4], 6);
    }

    #[test]
    fn products() {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let p = c2.direct_product(&c4).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.abelian_invariants(), vec![2, 4]);
        let w = c2.wreath_sym(3).unwrap();
        assert_eq!(w.order(), 48);
    }
}
