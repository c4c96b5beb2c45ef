//! Factorization over Z of small-degree polynomials (Zassenhaus: factor
//! modulo a prime, Hensel-lift, recombine).

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;
use super::{Int, Rat, RatPoly};

type ZPoly = Vec<Int>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn zmod(a: &ZPoly, m: &Int) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn symmetric(a: &ZPoly, m: &Int) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &ZPoly, p: u64) -> FpPoly {
    let pi = Int::from(p);
    FpPoly::new(p, a.iter().map(|x| x.mod_floor(&pi).to_u64().unwrap()).collect())
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.coeffs().iter().map(|&x| Int::from(x)).collect()
}

/// Lifts `f = g*h mod p` (g, h monic, f monic mod p^k) to modulus `p^k`.
fn hensel_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, t) = g.ext_gcd(h);
    let pi = Int::from(p);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pj = pi.clone();
    for _ in 1..k {
        let next = &pj * &pi;
        let diff: ZPoly = {
            let gh = zmul(&gz, &hz);
            let n = f.len().max(gh.len());
            (0..n)
                .map(|i| {
                    let a = f.get(i).cloned().unwrap_or_default();
                    let b = gh.get(i).cloned().unwrap_or_default();
                    (a - b).mod_floor(&next) / &pj
                })
                .collect()
        };
        let e = to_fp(&diff, p);
        let tau = t.mul(&e).rem(g);
        let sigma = e.sub(&tau.mul(h)).div_rem(g).0;
        let add = |base: &ZPoly, delta: &FpPoly| -> ZPoly {
            let d = from_fp(delta);
            let n = base.len().max(d.len());
            trim(
                (0..n)
                    .map(|i| {
                        base.get(i).cloned().unwrap_or_default()
                            + d.get(i).cloned().unwrap_or_default() * &pj
                    })
                    .collect(),
            )
        };
        gz = add(&gz, &tau);
        hz = add(&hz, &sigma);
        pj = next;
    }
    (zmod(&gz, &pj), zmod(&hz, &pj))
}

fn hensel_multi(f: &ZPoly, facs: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let m = Int::from(p).pow(k);
    if facs.len() == 1 {
        return vec![zmod(f, &m)];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let prod = |v: &[FpPoly]| v.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let (g, h) = hensel_pair(f, &prod(a), &prod(b), p, k);
    let mut out = hensel_multi(&g, a, p, k);
    out.extend(hensel_multi(&h, b, p, k));
    out
}

fn primitive(a: &ZPoly) -> ZPoly {
    let g = a.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return a.clone();
    }
    let sign = if a.last().is_some_and(Signed::is_negative) { -Int::one() } else { Int::one() };
    a.iter().map(|x| x / &g * &sign).collect()
}

fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let q = RatPoly::from_bigints(a).div_exact(&RatPoly::from_bigints(b))?;
    q.to_ints()
}

/// Irreducible factors over Z of a primitive square-free polynomial.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    let tries = 6 + n / 4;
    while tried < tries {
        p += 2;
        if !super::nt::is_prime(p) || (&lc % Int::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.degree() != n || !fp.is_squarefree() {
            continue;
        }
        tried += 1;
        let facs: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("a good prime exists");
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let maxc = f.iter().map(|x| x.abs()).max().unwrap();
    let bound = Int::from(2u32).pow(n as u32 + 1) * Int::from(n as u64 + 1) * maxc * lc.abs();
    let mut k = 1u32;
    while Int::from(p).pow(k) <= bound {
        k += 1;
    }
    let m = Int::from(p).pow(k);
    let lc_inv = lc.mod_floor(&m).modinv(&m).expect("lc invertible mod p");
    let fmonic: ZPoly = f.iter().map(|x| (x * &lc_inv).mod_floor(&m)).collect();
    let mut lifted = hensel_multi(&fmonic, &facs, p, k);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        'subsets: loop {
            let lcr = rest.last().unwrap().clone();
            let mut cand = vec![lcr];
            for &i in &idx {
                cand = zmod(&zmul(&cand, &lifted[i]), &m);
            }
            let cand = symmetric(&cand, &m);
            let c0 = cand.first().cloned().unwrap_or_default();
            let r0 = &rest[0] * rest.last().unwrap();
            let plausible = if c0.is_zero() { r0.is_zero() } else { (&r0 % &c0).is_zero() };
            let cand = primitive(&cand);
            if !plausible {
                // constant term cannot divide; skip the full division
            } else if let Some(q) = zdiv_exact(&rest, &cand) {
                out.push(cand);
                rest = primitive(&q);
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break 'subsets;
            }
            let mut j = size;
            loop {
                if j == 0 {
                    break 'subsets;
                }
                j -= 1;
                if idx[j] < r - size + j {
                    idx[j] += 1;
                    for l in j + 1..size {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rest);
    out
}

/// Irreducible factorization over Q: monic factors with multiplicities,
/// sorted by degree then coefficients.
pub fn factor_over_q(f: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    let parts = if f.degree() > 0 && squarefree_mod_small_prime(f) {
        vec![(f.monic(), 1)]
    } else {
        f.squarefree_decomposition()
    };
    for (s, m) in parts {
        let z = s.primitive_part();
        for g in zassenhaus(&z) {
            out.push((RatPoly::from_bigints(&g).monic(), m));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    out
}

/// Sufficient test for square-freeness over Q: square-free modulo some
/// prime that keeps the degree. Avoids rational gcds, whose coefficients
/// grow quickly with the degree.
pub fn squarefree_mod_small_prime(f: &RatPoly) -> bool {
    let z = f.primitive_part();
    let n = z.len() - 1;
    let mut p = 2u64;
    for _ in 0..8 {
        p += 1;
        while !super::nt::is_prime(p) {
            p += 1;
        }
        let fp = to_fp(&z, p);
        if fp.degree() == n && fp.is_squarefree() {
            return true;
        }
    }
    false
}

pub fn is_irreducible_over_q(f: &RatPoly) -> bool {
    let fac = factor_over_q(f);
    f.degree() >= 1 && fac.len() == 1 && fac[0].1 == 1
}

/// Whether `f` has a rational root (used by quick sanity paths).
pub fn rational_roots(f: &RatPoly) -> Vec<Rat> {
    factor_over_q(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn irreducible_biquadratics() {
        assert!(is_irreducible_over_q(&p(&[16, 0, 0, 0, 1])));
        assert!(is_irreducible_over_q(&p(&[81, 0, -9, 0, 1])));
        assert!(is_irreducible_over_q(&p(&[25, 0, 2, 0, 1])));
        assert!(is_irreducible_over_q(&p(&[1, 0, -10, 0, 1])));
        assert!(is_irreducible_over_q(&p(&[-5, 0, 1])));
    }

    #[test]
    fn splits_products() {
        let f = &p(&[-5, 0, 1]) * &p(&[5, -1, 1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac, [(p(&[-5, 0, 1]), 1), (p(&[5, -1, 1]), 1)]);
        let g = &(&p(&[1, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[1, 2, 0, 1]);
        let fac = factor_over_q(&g);
        assert_eq!(fac.len(), 3);
        let h = &p(&[-4, 0, 1]) * &p(&[-9, 0, 1]);
        assert_eq!(factor_over_q(&h).len(), 4);
        let q = &p(&[2, 0, 0, 1]) * &p(&[3, 0, 0, 1]);
        assert_eq!(factor_over_q(&q).len(), 2);
        let sq = &p(&[1, 1, 1]).pow(2) * &p(&[-3, 2]);
        assert_eq!(factor_over_q(&sq), [(RatPoly::new(vec![Rat::new((-3).into(), 2.into()), Rat::one()]), 1), (p(&[1, 1, 1]), 2)]);
    }
}
