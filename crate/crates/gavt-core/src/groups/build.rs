//! Construction recipes for the catalog groups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::gf::{action_group, linear_group, matrix_perm, normalize, orbit_points, projective_group, sl2_gens, Gf, Mat};
use super::FinGroup;
use crate::amitsur::GmrParams;
use crate::{Error, Result};

pub fn cyclic(n: u32) -> Result<FinGroup> {
    let n = n.max(1) as u16;
    let gens = if n == 1 { vec![] } else { vec![(0..n).map(|i| (i + 1) % n).collect()] };
    FinGroup::generate(n as usize, gens)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: u32) -> Result<FinGroup> {
    if n <= 2 {
        let n = n as i64;
        return FinGroup::regular((0i64, 0i64), &[(1, 0), (0, 1)], |&(i, j), &(k, l)| {
            let k = if j == 1 { -k } else { k };
            ((i + k).rem_euclid(n.max(1)), (j + l) % 2)
        });
    }
    let n = n as u16;
    let rot = (0..n).map(|i| (i + 1) % n).collect();
    let refl = (0..n).map(|i| (n - i) % n).collect();
    FinGroup::generate(n as usize, vec![rot, refl])
}

/// Dicyclic group of order `order` (a multiple of 4): `<a, b | a^m, b^2 = a^(m/2), b a b^-1 = a^-1>`
/// with `m = order/2`.
pub fn dicyclic(order: u32) -> Result<FinGroup> {
    if !order.is_multiple_of(4) || order == 0 {
        return Err(Error::Invalid(format!("Dic{order}: order must be a positive multiple of 4")));
    }
    let m = (order / 2) as i64;
    FinGroup::regular((0i64, 0i64), &[(1, 0), (0, 1)], move |&(i, j), &(k, l)| {
        let k = if j == 1 { -k } else { k };
        let mut a = i + k;
        let mut b = j + l;
        if b >= 2 {
            b -= 2;
            a += m / 2;
        }
        (a.rem_euclid(m), b)
    })
}

/// `G(m, r)` from its presentation.
pub fn gmr(p: &GmrParams) -> Result<FinGroup> {
    let (m, r, n, t) = (p.m as i64, p.r as i64, p.n as i64, p.t as i64);
    let rpow: Vec<i64> = (0..n.max(1)).scan(1i64, |acc, _| {
        let v = *acc;
        *acc = *acc * r % m;
        Some(v)
    }).collect();
    let b = if n > 1 { (0, 1) } else { (0, 0) };
    FinGroup::regular((0i64, 0i64), &[(1 % m, 0), b], move |&(i, j), &(k, l)| {
        let mut a = i + rpow[j as usize] * k;
        let mut e = j + l;
        if e >= n {
            e -= n;
            a += t;
        }
        (a.rem_euclid(m), e)
    })
}

pub fn symmetric(n: u32) -> Result<FinGroup> {
    let n = n.max(1) as u16;
    if n == 1 {
        return FinGroup::generate(1, vec![]);
    }
    let mut t: Vec<u16> = (0..n).collect();
    t.swap(0, 1);
    let c = (0..n).map(|i| (i + 1) % n).collect();
    FinGroup::generate(n as usize, vec![t, c])
}

pub fn alternating(n: u32) -> Result<FinGroup> {
    let n = n.max(1) as u16;
    let gens = (2..n)
        .map(|i| {
            let mut p: Vec<u16> = (0..n).collect();
            p[0] = 1;
            p[1] = i;
            p[i as usize] = 0;
            p
        })
        .collect();
    FinGroup::generate(n as usize, gens)
}

/// `N ⋊ K`. Each generator of `K` is given by the images of `N`'s
/// generators under the automorphism it induces and by a permutation of
/// `k_degree` points making `K` act faithfully.
pub fn semidirect(n: &FinGroup, k_gens: &[(Vec<u32>, Vec<u16>)], k_degree: usize) -> Result<FinGroup> {
    let size = n.order();
    let total = size + k_degree;
    let mut perms = Vec::new();
    for &g in n.gens() {
        let mut p: Vec<u16> = (0..size as u32).map(|x| n.mul(x, g) as u16).collect();
        p.extend((size..total).map(|i| i as u16));
        perms.push(p);
    }
    for (images, kp) in k_gens {
        let alpha = n
            .extend_hom(n.gens(), n, images)
            .ok_or_else(|| Error::Invalid("semidirect: images do not define an automorphism".into()))?;
        let mut seen = vec![false; size];
        for &a in &alpha {
            seen[a as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("semidirect: map is not bijective".into()));
        }
        let mut p: Vec<u16> = alpha.iter().map(|&a| a as u16).collect();
        p.extend(kp.iter().map(|&i| i + size as u16));
        perms.push(p);
    }
    FinGroup::generate(total, perms)
}

fn cycle_perm(k: u16) -> Vec<u16> {
    (0..k).map(|i| (i + 1) % k).collect()
}

/// A linear group together with its matrices' point set, so that further
/// matrices can be located inside it.
struct Linear {
    f: Gf,
    gens: Vec<Mat>,
    group: FinGroup,
    points: Vec<Vec<u8>>,
}

impl Linear {
    fn new(f: Gf, gens: Vec<Mat>) -> Result<Linear> {
        let group = linear_group(&f, &gens)?;
        let points = orbit_points(&f, &gens);
        Ok(Linear { f, gens, group, points })
    }

    fn locate(&self, m: &Mat) -> Result<u32> {
        matrix_perm(&self.f, &self.group, m, &self.points)
            .ok_or_else(|| Error::Invalid("matrix not in group".into()))
    }

    /// Images of the generators under conjugation `x -> c^-1 x c`.
    fn conj_images(&self, c: &Mat) -> Result<Vec<u32>> {
        let ci = c.inverse(&self.f).ok_or(Error::Invalid("singular".into()))?;
        self.gens.iter().map(|g| self.locate(&ci.mul(&self.f, g).mul(&self.f, c))).collect()
    }
}

fn sl2(q: u8) -> Result<Linear> {
    let f = Gf::new(q)?;
    let gens = sl2_gens(&f);
    Linear::new(f, gens)
}

/// All elements of the matrix group generated by `gens`, up to `limit`.
fn mat_closure(f: &Gf, gens: &[Mat], limit: usize) -> Option<Vec<Mat>> {
    let mut elems = vec![Mat::identity(gens[0].n)];
    let mut seen: hashbrown::HashSet<Mat> = elems.iter().cloned().collect();
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let y = elems[head].mul(f, g);
            if seen.insert(y.clone()) {
                if elems.len() >= limit {
                    return None;
                }
                elems.push(y);
            }
        }
        head += 1;
    }
    Some(elems)
}

fn sl2_elements(f: &Gf) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = Mat::new(2, vec![a, b, c, d]);
                    if m.det(f) == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Binary octahedral group as a subgroup of order 48 in `SL_2(F_7)`.
fn binary_octahedral_mats() -> (Gf, Vec<Mat>) {
    let f = Gf::new(7).unwrap();
    let all = sl2_elements(&f);
    let x = all.iter().find(|m| m.order(&f, 8) == Some(8)).unwrap().clone();
    for y in &all {
        if let Some(o) = y.order(&f, 8) {
            if o != 3 && o != 6 {
                continue;
            }
        } else {
            continue;
        }
        let gens = vec![x.clone(), y.clone()];
        if let Some(el) = mat_closure(&f, &gens, 48) {
            if el.len() == 48 {
                return (f, gens);
            }
        }
    }
    unreachable!("SL_2(F_7) contains a binary octahedral subgroup")
}

fn binary_octahedral() -> Result<FinGroup> {
    let (f, gens) = binary_octahedral_mats();
    linear_group(&f, &gens)
}

fn gl2_3() -> Result<FinGroup> {
    let f = Gf::new(3)?;
    let mut gens = sl2_gens(&f);
    gens.push(Mat::diag(&[1, 2]));
    linear_group(&f, &gens)
}

fn gl3_2() -> Result<FinGroup> {
    let f = Gf::new(2)?;
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = Mat::identity(3);
                m.a[i * 3 + j] = 1;
                gens.push(m);
            }
        }
    }
    linear_group(&f, &gens)
}

fn with_minus_one(g: FinGroup) -> Result<FinGroup> {
    g.direct_product(&cyclic(2)?)
}

/// `PGL_2(F_7)` on the projective line, times the center.
fn pm_l2_7_2() -> Result<FinGroup> {
    let f = Gf::new(7)?;
    let gens = vec![
        Mat::ints(&f, 2, &[1, 0, 1, 1]),
        Mat::ints(&f, 2, &[3, 0, 0, 1]),
        Mat::ints(&f, 2, &[0, 1, -1, 0]),
    ];
    with_minus_one(projective_group(&f, &gens, super::gf::basis(2))?)
}

/// `U_3(3)` through unitary transvections on the isotropic points of
/// `F_9^3` with the antidiagonal Hermitian form, times the center.
fn pm_u3_3() -> Result<FinGroup> {
    let f = Gf::new(9)?;
    let herm = |x: &[u8], y: &[u8]| {
        (0..3).fold(0, |s, i| f.add(s, f.mul(x[i], f.frob(y[2 - i]))))
    };
    let mut isotropic = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let v = vec![a, b, c];
                if v.iter().any(|&x| x != 0) && herm(&v, &v) == 0 && normalize(&f, &v) == v {
                    isotropic.push(v);
                }
            }
        }
    }
    let scalars: Vec<u8> = f.elements().filter(|&a| a != 0 && f.add(a, f.frob(a)) == 0).collect();
    let mut trans: Vec<(Vec<u8>, u8)> = Vec::new();
    for u in &isotropic {
        for &a in &scalars {
            trans.push((u.clone(), a));
        }
    }
    let seeds = vec![isotropic[0].clone()];
    let g = action_group(seeds, trans.len(), |v: &Vec<u8>, k| {
        let (u, a) = &trans[k];
        let c = f.mul(*a, herm(v, u));
        let w: Vec<u8> = (0..3).map(|i| f.add(v[i], f.mul(c, u[i]))).collect();
        normalize(&f, &w)
    })?;
    with_minus_one(g)
}

/// Normalizer of `Q8 ⊗ D8` in `Sp_4(F_3)`.
fn extraspecial_alt5() -> Result<FinGroup> {
    let f = Gf::new(3)?;
    let j2 = Mat::ints(&f, 2, &[0, 1, -1, 0]);
    let omega = j2.kron(&f, &Mat::identity(2));
    let mut gens = Vec::new();
    for code in 1..81u32 {
        let u: Vec<u8> = (0..4).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
        if normalize(&f, &u) != u || u.iter().any(|&x| x > 1) {
            continue;
        }
        // v -> v + omega(v, u) u, i.e. I + (omega u^T) u
        let col: Vec<u8> = (0..4).map(|i| (0..4).fold(0, |s, k| f.add(s, f.mul(omega.get(i, k), u[k])))).collect();
        let mut m = Mat::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                m.a[i * 4 + j] = f.add(m.a[i * 4 + j], f.mul(col[i], u[j]));
            }
        }
        gens.push(m);
    }
    let sp = Linear::new(f.clone(), gens)?;
    let q8 = [Mat::ints(&f, 2, &[0, 1, -1, 0]), Mat::ints(&f, 2, &[1, 1, 1, -1])];
    let d8 = [Mat::ints(&f, 2, &[0, 1, -1, 0]), Mat::ints(&f, 2, &[1, 0, 0, -1])];
    let one = Mat::identity(2);
    let mut e_gens = Vec::new();
    for a in &q8 {
        e_gens.push(sp.locate(&a.kron(&f, &one))?);
    }
    for b in &d8 {
        e_gens.push(sp.locate(&one.kron(&f, b))?);
    }
    let g = &sp.group;
    let e_mask = g.subgroup(&e_gens);
    let normalizes = |x: u32| e_gens.iter().all(|&e| e_mask[g.conj(e, x) as usize]);
    let mut n_gens: Vec<u32> = Vec::new();
    let mut mask = g.subgroup(&[]);
    for x in 0..g.order() as u32 {
        if !mask[x as usize] && normalizes(x) {
            n_gens.push(x);
            mask = g.subgroup(&n_gens);
        }
    }
    FinGroup::generate(g.degree(), n_gens.iter().map(|&x| g.elem(x).to_vec()).collect())
}

/// `<SL_2(F_5), diag(l, 1/l)>` in `SL_2(F_25)` with `l^2 = 3`.
fn sl2_5_nonsplit() -> Result<FinGroup> {
    let f = Gf::new(25)?;
    let l = f.sqrt(3).ok_or(Error::Invalid("no sqrt".into()))?;
    let mut gens: Vec<Mat> = sl2_gens(&Gf::new(5)?);
    gens.push(Mat::diag(&[l, f.inv(l)]));
    linear_group(&f, &gens)
}

/// `SL_2(F_5) ⋊ C_2` with the outer automorphism given by conjugation
/// with an element of non-square determinant.
fn sl2_5_split() -> Result<FinGroup> {
    let lin = sl2(5)?;
    let c = Mat::ints(&lin.f, 2, &[0, 1, 2, 0]);
    let images = lin.conj_images(&c)?;
    semidirect(&lin.group, &[(images, vec![1, 0])], 2)
}

/// `C_3 ⋊ O*` with `O*` acting through its abelianization by inversion.
fn c3_o() -> Result<FinGroup> {
    let c3 = cyclic(3)?;
    let o = binary_octahedral()?;
    let derived = o.derived_subgroup();
    let a = c3.gens()[0];
    let inv_a = c3.inv(a);
    let k_gens: Vec<(Vec<u32>, Vec<u16>)> = o
        .gens()
        .iter()
        .map(|&g| {
            let img = if derived.contains(&g) { a } else { inv_a };
            (vec![img], o.elem(g).to_vec())
        })
        .collect();
    semidirect(&c3, &k_gens, o.degree())
}

/// `SL_2(F_3) ⋊ C_4`, the generator acting as conjugation by an element of
/// order 8 in `GL_2(F_3)`.
fn t_c4() -> Result<FinGroup> {
    let lin = sl2(3)?;
    let f = &lin.f;
    let c = Mat::ints(f, 2, &[1, 1, -1, 1]);
    if c.order(f, 8) != Some(8) {
        return Err(Error::Invalid("no element of order 8".into()));
    }
    let images = lin.conj_images(&c)?;
    semidirect(&lin.group, &[(images, cycle_perm(4))], 4)
}

/// `C_12 ⋊ C_2` with `a -> a^5`.
fn c12_c2() -> Result<FinGroup> {
    let n = cyclic(12)?;
    let a = n.gens()[0];
    semidirect(&n, &[(vec![n.pow(a, 5)], vec![1, 0])], 2)
}

/// `Dic12 ⋊ C6`: `x -> x`, `y -> xy` on `Dic12 = <x, y>` with `x` of order 6.
fn dic12_c6() -> Result<FinGroup> {
    let n = dicyclic(12)?;
    let (x, y) = (n.gens()[0], n.gens()[1]);
    debug_assert_eq!(n.element_order(x), 6);
    semidirect(&n, &[(vec![x, n.mul(x, y)], cycle_perm(6))], 6)
}

/// Heisenberg group of order 27 extended by matrices acting through
/// `(x, z) -> (xA, det(A) z)`, on the 27 points of the Heisenberg group.
fn heisenberg_ext(mats: &[Mat]) -> Result<FinGroup> {
    let f = Gf::new(3)?;
    let omega = |x: &[u8], y: &[u8]| f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    let hmul = |a: &[u8; 3], b: &[u8; 3]| -> [u8; 3] {
        [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(f.add(a[2], b[2]), omega(&a[..2], &b[..2]))]
    };
    let translations = [[1u8, 0, 0], [0, 1, 0]];
    let ngens = translations.len() + mats.len();
    action_group(vec![[0u8, 0, 0]], ngens, |p: &[u8; 3], k| {
        if k < translations.len() {
            hmul(p, &translations[k])
        } else {
            let m = &mats[k - translations.len()];
            let x = m.act(&f, &p[..2]);
            [x[0], x[1], f.mul(m.det(&f), p[2])]
        }
    })
}

/// `(He3 ⋊ GL_2(F_3)) × C_2`.
fn pm_he3_gl2_3() -> Result<FinGroup> {
    let f = Gf::new(3)?;
    let mut mats = sl2_gens(&f);
    mats.push(Mat::diag(&[1, 2]));
    with_minus_one(heisenberg_ext(&mats)?)
}

/// `(He3 × <-1>) ⋊ SL_2(F_3)`.
fn he3_pm_sl2_3() -> Result<FinGroup> {
    let f = Gf::new(3)?;
    with_minus_one(heisenberg_ext(&sl2_gens(&f))?)
}

/// Names of the builtin recipes.
pub const BUILTINS: &[&str] = &[
    "sl2:3",
    "sl2:5",
    "sl2:9",
    "binary-octahedral",
    "gl2:3",
    "gl3:2",
    "pm-pgl2:7",
    "pm-u3:3",
    "normalizer-2^1+4-sp4:3",
    "sl2:5.2",
    "sl2:5:2",
    "c3:o*",
    "sl2:3:c4",
    "c12:c2",
    "dic12:c6",
    "pm-he3:gl2:3",
    "he3-pm:sl2:3",
];

/// Runs a builtin recipe by name.
pub fn builtin(name: &str) -> Result<FinGroup> {
    match name {
        "sl2:3" => Ok(sl2(3)?.group),
        "sl2:5" => Ok(sl2(5)?.group),
        "sl2:9" => Ok(sl2(9)?.group),
        "binary-octahedral" => binary_octahedral(),
        "gl2:3" => gl2_3(),
        "gl3:2" => gl3_2(),
        "pm-pgl2:7" => pm_l2_7_2(),
        "pm-u3:3" => pm_u3_3(),
        "normalizer-2^1+4-sp4:3" => extraspecial_alt5(),
        "sl2:5.2" => sl2_5_nonsplit(),
        "sl2:5:2" => sl2_5_split(),
        "c3:o*" => c3_o(),
        "sl2:3:c4" => t_c4(),
        "c12:c2" => c12_c2(),
        "dic12:c6" => dic12_c6(),
        "pm-he3:gl2:3" => pm_he3_gl2_3(),
        "he3-pm:sl2:3" => he3_pm_sl2_3(),
        _ => Err(Error::UnknownLabel(String::from(name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(6).unwrap().order(), 12);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(dihedral(1).unwrap().order(), 2);
        let q8 = dicyclic(8).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.order_histogram()[&4], 6);
        assert!(dicyclic(4).unwrap().is_abelian());
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        let g = gmr(&GmrParams::new(7, 2).unwrap()).unwrap();
        assert_eq!(g.order(), 21);
    }

    #[test]
    fn builtin_orders() {
        let expect = [
            ("sl2:3", 24),
            ("sl2:5", 120),
            ("binary-octahedral", 48),
            ("gl2:3", 48),
            ("gl3:2", 168),
            ("pm-pgl2:7", 672),
            ("sl2:5.2", 240),
            ("sl2:5:2", 240),
            ("c3:o*", 144),
            ("sl2:3:c4", 96),
            ("c12:c2", 24),
            ("dic12:c6", 72),
            ("pm-he3:gl2:3", 2592),
            ("he3-pm:sl2:3", 1296),
        ];
        for (name, order) in expect {
            assert_eq!(builtin(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn large_builtins() {
        assert_eq!(builtin("sl2:9").unwrap().order(), 720);
        assert_eq!(builtin("pm-u3:3").unwrap().order(), 12096);
        assert_eq!(builtin("normalizer-2^1+4-sp4:3").unwrap().order(), 1920);
    }

    #[test]
    fn octahedral_vs_gl2() {
        let o = builtin("binary-octahedral").unwrap();
        let g = builtin("gl2:3").unwrap();
        assert_ne!(o.order_histogram(), g.order_histogram());
        assert_eq!(o.order_histogram()[&2], 1);
    }

    #[test]
    fn sl2_5_extensions_differ() {
        let a = builtin("sl2:5.2").unwrap();
        let b = builtin("sl2:5:2").unwrap();
        assert_eq!(a.order_histogram()[&2], 1);
        assert!(b.order_histogram()[&2] > 1);
    }
}
