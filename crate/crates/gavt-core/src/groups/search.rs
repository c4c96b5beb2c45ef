//! Isomorphism and embedding tests by generator-image backtracking.

use alloc::vec;
use alloc::vec::Vec;

use super::FinGroup;
use crate::{Error, Result};

/// Largest target order searched without a hint.
pub const DEFAULT_ORDER_BOUND: usize = 100_000;

/// Whether `g` is isomorphic to a subgroup of `h`.
pub fn embeds(g: &FinGroup, h: &FinGroup) -> Result<bool> {
    embeds_bounded(g, h, DEFAULT_ORDER_BOUND)
}

pub fn embeds_bounded(g: &FinGroup, h: &FinGroup, bound: usize) -> Result<bool> {
    if !h.order().is_multiple_of(g.order()) {
        return Ok(false);
    }
    if h.order() > bound {
        return Err(Error::TooLarge(bound));
    }
    Ok(find_embedding(g, h, false).is_some())
}

/// Checks a proposed embedding: `images[i]` is the image of the `i`-th
/// construction generator of `g` (see [`FinGroup::gens`]).
pub fn embeds_with_hint(g: &FinGroup, h: &FinGroup, images: &[u32]) -> Result<bool> {
    if images.len() != g.gens().len() {
        return Err(Error::Invalid("hint must give one image per generator".into()));
    }
    if !h.order().is_multiple_of(g.order()) {
        return Ok(false);
    }
    Ok(match g.extend_hom(g.gens(), h, images) {
        Some(phi) => is_injective(&phi),
        None => false,
    })
}

pub fn is_isomorphic(g: &FinGroup, h: &FinGroup) -> Result<bool> {
    is_isomorphic_bounded(g, h, DEFAULT_ORDER_BOUND)
}

pub fn is_isomorphic_bounded(g: &FinGroup, h: &FinGroup, bound: usize) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if h.order() > bound {
        return Err(Error::TooLarge(bound));
    }
    if g.fingerprint() != h.fingerprint() {
        return Ok(false);
    }
    Ok(find_embedding(g, h, true).is_some())
}

fn is_injective(phi: &[u32]) -> bool {
    phi.iter().skip(1).all(|&x| x != 0)
}

fn element_order_counts(g: &FinGroup) -> Vec<(u32, usize)> {
    g.order_histogram().into_iter().collect()
}

/// Images of `g.small_gens()` defining a monomorphism into `h` (an
/// isomorphism when `iso`), if one exists.
pub fn find_embedding(g: &FinGroup, h: &FinGroup, iso: bool) -> Option<(Vec<u32>, Vec<u32>)> {
    let hh = h.order_histogram();
    for (o, c) in element_order_counts(g) {
        if hh.get(&o).copied().unwrap_or(0) < c {
            return None;
        }
    }
    let gens = g.small_gens();
    if gens.is_empty() {
        return Some((gens, Vec::new()));
    }
    let cent_ok = |x: u32, y: u32| {
        let (cg, ch) = (g.centralizer_order(x), h.centralizer_order(y));
        if iso {
            cg == ch
        } else {
            ch % cg == 0
        }
    };
    let ord_g: Vec<u32> = gens.iter().map(|&x| g.element_order(x)).collect();
    let first: Vec<u32> = h
        .classes()
        .reps
        .iter()
        .copied()
        .filter(|&y| h.element_order(y) == ord_g[0] && cent_ok(gens[0], y))
        .collect();
    let mut pool: Vec<Vec<u32>> = vec![first];
    for (i, &x) in gens.iter().enumerate().skip(1) {
        pool.push(
            (0..h.order() as u32)
                .filter(|&y| h.element_order(y) == ord_g[i] && cent_ok(x, y))
                .collect(),
        );
    }
    let mut images = Vec::with_capacity(gens.len());
    if backtrack(g, h, &gens, &pool, &mut images) {
        let phi = g.extend_hom(&gens, h, &images)?;
        debug_assert!(is_injective(&phi));
        return Some((gens, images));
    }
    None
}

fn word_orders_match(g: &FinGroup, h: &FinGroup, gens: &[u32], images: &[u32], y: u32) -> bool {
    let i = images.len();
    let x = gens[i];
    for j in 0..i {
        let (a, b) = (gens[j], images[j]);
        let checks = [
            (g.mul(a, x), h.mul(b, y)),
            (g.mul(a, g.inv(x)), h.mul(b, h.inv(y))),
            (g.mul(g.mul(a, a), x), h.mul(h.mul(b, b), y)),
            (g.mul(a, g.mul(x, x)), h.mul(b, h.mul(y, y))),
        ];
        if checks.iter().any(|&(u, v)| g.element_order(u) != h.element_order(v)) {
            return false;
        }
        let cg = g.mul(g.mul(g.inv(a), g.inv(x)), g.mul(a, x));
        let ch = h.mul(h.mul(h.inv(b), h.inv(y)), h.mul(b, y));
        if g.element_order(cg) != h.element_order(ch) {
            return false;
        }
    }
    true
}

/// Checks that the assignment on a prefix of the generators extends to an
/// injective homomorphism of the subgroup they generate.
fn partial_ok(g: &FinGroup, h: &FinGroup, gens: &[u32], images: &[u32]) -> bool {
    let n = g.order();
    let mut phi = vec![u32::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0u32];
    let mut used = hashbrown::HashSet::new();
    used.insert(0u32);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let img = h.mul(phi[x as usize], images[k]);
            match phi[y as usize] {
                u32::MAX => {
                    if !used.insert(img) {
                        return false;
                    }
                    phi[y as usize] = img;
                    queue.push(y);
                }
                v if v != img => return false,
                _ => {}
            }
        }
    }
    true
}

fn backtrack(g: &FinGroup, h: &FinGroup, gens: &[u32], pool: &[Vec<u32>], images: &mut Vec<u32>) -> bool {
    let i = images.len();
    if i == gens.len() {
        return true;
    }
    for &y in &pool[i] {
        if !word_orders_match(g, h, gens, images, y) {
            continue;
        }
        images.push(y);
        if partial_ok(g, h, &gens[..=i], images) && backtrack(g, h, gens, pool, images) {
            return true;
        }
        images.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::build;
    use super::*;

    #[test]
    fn q8_in_t() {
        let q8 = build::dicyclic(8).unwrap();
        let t = build::builtin("sl2:3").unwrap();
        assert!(embeds(&q8, &t).unwrap());
        assert!(!embeds(&build::dihedral(4).unwrap(), &t).unwrap());
    }

    #[test]
    fn iso_examples() {
        let sym4 = build::symmetric(4).unwrap();
        let c2 = build::cyclic(2).unwrap();
        let w = c2.wreath_sym(3).unwrap();
        assert!(is_isomorphic(&sym4.direct_product(&c2).unwrap(), &w).unwrap());
        let o = build::builtin("binary-octahedral").unwrap();
        let gl = build::builtin("gl2:3").unwrap();
        assert!(!is_isomorphic(&o, &gl).unwrap());
        let d6 = build::dihedral(6).unwrap();
        let d3c2 = build::dihedral(3).unwrap().direct_product(&c2).unwrap();
        assert!(is_isomorphic(&d6, &d3c2).unwrap());
    }

    #[test]
    fn hint_checked() {
        let c4 = build::cyclic(4).unwrap();
        let c8 = build::cyclic(8).unwrap();
        let a = c8.gens()[0];
        assert!(embeds_with_hint(&c4, &c8, &[c8.pow(a, 2)]).unwrap());
        assert!(!embeds_with_hint(&c4, &c8, &[a]).unwrap());
        assert!(!embeds_with_hint(&c4, &c8, &[c8.pow(a, 4)]).unwrap());
    }
}
