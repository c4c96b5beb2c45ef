//! Small finite fields by lookup tables, and matrix groups over them turned
//! into permutation groups.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::FinGroup;
use crate::arith::nt::prime_power;
use crate::{Error, Result};

/// `F_q` for `q = p` or `q = p^2`. Elements are `0..q`; for `q = p^2` the
/// value `a + p*b` stands for `a + b*alpha` with `alpha^2` a fixed
/// non-square of `F_p`.
#[derive(Clone, Debug)]
pub struct Gf {
    pub q: u8,
    pub p: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: u8) -> Result<Gf> {
        let (p, k) = prime_power(q as u64)?;
        if k > 2 || (k == 2 && p == 2) {
            return Err(Error::Invalid(alloc::format!("GF({q}) not supported")));
        }
        let p = p as u8;
        let pu = p as usize;
        let qu = q as usize;
        let nonsq = (2..pu).find(|&n| (1..pu).all(|x| x * x % pu != n)).unwrap_or(pu - 1);
        let split = |x: usize| (x % pu, x / pu);
        let join = |a: usize, b: usize| (a % pu + pu * (b % pu)) as u8;
        let mut add = vec![0; qu * qu];
        let mut mul = vec![0; qu * qu];
        for x in 0..qu {
            for y in 0..qu {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[x * qu + y] = join(a + c, b + d);
                mul[x * qu + y] = join(a * c + b * d * nonsq, a * d + b * c);
            }
        }
        let mut neg = vec![0; qu];
        let mut inv = vec![0; qu];
        for x in 0..qu {
            for y in 0..qu {
                if add[x * qu + y] == 0 {
                    neg[x] = y as u8;
                }
                if mul[x * qu + y] == 1 {
                    inv[x] = y as u8;
                }
            }
        }
        Ok(Gf { q, p, add, mul, neg, inv })
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, k: u32) -> u8 {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// The element `n * 1` for an integer `n`.
    pub fn int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }

    /// Frobenius `x -> x^p`.
    pub fn frob(&self, a: u8) -> u8 {
        self.pow(a, self.p as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        let q1 = self.q as u32 - 1;
        (2..self.q)
            .find(|&g| (1..q1).all(|k| self.pow(g, k) != 1))
            .unwrap_or(1)
    }

    pub fn sqrt(&self, a: u8) -> Option<u8> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }
}

/// Square matrix over a [`Gf`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<u8>,
}

impl Mat {
    pub fn new(n: usize, a: Vec<u8>) -> Mat {
        assert_eq!(a.len(), n * n);
        Mat { n, a }
    }

    /// Entries given as integers reduced into the prime field.
    pub fn ints(f: &Gf, n: usize, a: &[i64]) -> Mat {
        Mat::new(n, a.iter().map(|&x| f.int(x)).collect())
    }

    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn scalar(n: usize, c: u8) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = c;
        }
        Mat { n, a }
    }

    pub fn diag(d: &[u8]) -> Mat {
        let n = d.len();
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = d[i];
        }
        Mat { n, a }
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, f: &Gf, o: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(self.get(i, k), o.get(k, j)));
                }
                a[i * n + j] = s;
            }
        }
        Mat { n, a }
    }

    pub fn pow(&self, f: &Gf, k: u32) -> Mat {
        (0..k).fold(Mat::identity(self.n), |acc, _| acc.mul(f, self))
    }

    /// Multiplicative order, capped at `limit` (returns `None` beyond it).
    pub fn order(&self, f: &Gf, limit: u32) -> Option<u32> {
        let id = Mat::identity(self.n);
        let mut x = self.clone();
        for k in 1..=limit {
            if x == id {
                return Some(k);
            }
            x = x.mul(f, self);
        }
        None
    }

    pub fn det(&self, f: &Gf) -> u8 {
        match self.n {
            1 => self.a[0],
            2 => f.sub(f.mul(self.a[0], self.a[3]), f.mul(self.a[1], self.a[2])),
            _ => {
                let mut d = 0;
                let n = self.n;
                for j in 0..n {
                    let minor = Mat::new(
                        n - 1,
                        (1..n)
                            .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
                            .map(|(i, c)| self.get(i, c))
                            .collect(),
                    );
                    let t = f.mul(self.get(0, j), minor.det(f));
                    d = if j % 2 == 0 { f.add(d, t) } else { f.sub(d, t) };
                }
                d
            }
        }
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self, f: &Gf) -> Option<Mat> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut r = Mat::identity(n).a;
        for c in 0..n {
            let piv = (c..n).find(|&i| m[i * n + c] != 0)?;
            for k in 0..n {
                m.swap(c * n + k, piv * n + k);
                r.swap(c * n + k, piv * n + k);
            }
            let s = f.inv(m[c * n + c]);
            for k in 0..n {
                m[c * n + k] = f.mul(m[c * n + k], s);
                r[c * n + k] = f.mul(r[c * n + k], s);
            }
            for i in 0..n {
                if i != c && m[i * n + c] != 0 {
                    let t = m[i * n + c];
                    for k in 0..n {
                        m[i * n + k] = f.sub(m[i * n + k], f.mul(t, m[c * n + k]));
                        r[i * n + k] = f.sub(r[i * n + k], f.mul(t, r[c * n + k]));
                    }
                }
            }
        }
        Some(Mat { n, a: r })
    }

    pub fn kron(&self, f: &Gf, o: &Mat) -> Mat {
        let (n, m) = (self.n, o.n);
        let mut a = vec![0; n * m * n * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        a[(i * m + k) * n * m + j * m + l] = f.mul(self.get(i, j), o.get(k, l));
                    }
                }
            }
        }
        Mat { n: n * m, a }
    }

    /// Row vector times matrix.
    pub fn act(&self, f: &Gf, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).fold(0, |s, i| f.add(s, f.mul(v[i], self.get(i, j)))))
            .collect()
    }
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize(f: &Gf, v: &[u8]) -> Vec<u8> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) => {
            let s = f.inv(x);
            v.iter().map(|&y| f.mul(y, s)).collect()
        }
        None => v.to_vec(),
    }
}

/// Permutation group induced by `ngens` maps on a point set: the orbits of
/// `seeds` under `act(point, generator)` become the points.
pub fn action_group<P, F>(seeds: Vec<P>, ngens: usize, act: F) -> Result<FinGroup>
where
    P: Clone + Eq + core::hash::Hash,
    F: Fn(&P, usize) -> P,
{
    let mut points: Vec<P> = Vec::new();
    let mut index: HashMap<P, usize> = HashMap::new();
    for s in seeds {
        if !index.contains_key(&s) {
            index.insert(s.clone(), points.len());
            points.push(s);
        }
    }
    let mut head = 0;
    while head < points.len() {
        for g in 0..ngens {
            let y = act(&points[head], g);
            if !index.contains_key(&y) {
                if points.len() >= u16::MAX as usize {
                    return Err(Error::TooLarge(u16::MAX as usize));
                }
                index.insert(y.clone(), points.len());
                points.push(y);
            }
        }
        head += 1;
    }
    let perms = (0..ngens)
        .map(|g| points.iter().map(|p| index[&act(p, g)] as u16).collect())
        .collect();
    FinGroup::generate(points.len(), perms)
}

/// Unit vectors of `F_q^n`.
pub fn basis(n: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

/// The linear group generated by `gens`, acting on the orbits of the unit
/// vectors (a faithful action).
pub fn linear_group(f: &Gf, gens: &[Mat]) -> Result<FinGroup> {
    let n = gens[0].n;
    action_group(basis(n), gens.len(), |v: &Vec<u8>, g| gens[g].act(f, v))
}

/// The image of the group generated by `gens` in the projective group,
/// acting on lines through the given seed vectors.
pub fn projective_group(f: &Gf, gens: &[Mat], seeds: Vec<Vec<u8>>) -> Result<FinGroup> {
    let seeds = seeds.iter().map(|v| normalize(f, v)).collect();
    action_group(seeds, gens.len(), |v: &Vec<u8>, g| normalize(f, &gens[g].act(f, v)))
}

/// Generators of `SL_2(F_q)`: the elementary transvections with entries in
/// a basis of `F_q` over `F_p`.
pub fn sl2_gens(f: &Gf) -> Vec<Mat> {
    let mut scalars = vec![1u8];
    if f.q != f.p {
        scalars.push(f.p);
    }
    let mut gens = Vec::new();
    for &s in &scalars {
        gens.push(Mat::new(2, vec![1, s, 0, 1]));
        gens.push(Mat::new(2, vec![1, 0, s, 1]));
    }
    gens
}

/// Position of a matrix's action in a linear group built by
/// [`linear_group`] over the same field: the permutation it induces.
pub fn matrix_perm(f: &Gf, g: &FinGroup, m: &Mat, points: &[Vec<u8>]) -> Option<u32> {
    let index: HashMap<&Vec<u8>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let perm: Option<Vec<u16>> = points.iter().map(|p| index.get(&m.act(f, p)).map(|&i| i as u16)).collect();
    g.index_of(&perm?)
}

/// Orbit of the unit vectors under `gens`, in the order [`linear_group`]
/// numbers its points.
pub fn orbit_points(f: &Gf, gens: &[Mat]) -> Vec<Vec<u8>> {
    let n = gens[0].n;
    let mut points: Vec<Vec<u8>> = Vec::new();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    for s in basis(n) {
        if !index.contains_key(&s) {
            index.insert(s.clone(), points.len());
            points.push(s);
        }
    }
    let mut head = 0;
    while head < points.len() {
        for m in gens {
            let y = m.act(f, &points[head]);
            if !index.contains_key(&y) {
                index.insert(y.clone(), points.len());
                points.push(y);
            }
        }
        head += 1;
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u8, 3, 5, 7, 9, 25, 49] {
            let f = Gf::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            assert_eq!(f.pow(f.primitive(), q as u32 - 1), 1);
        }
    }

    #[test]
    fn special_linear_orders() {
        for (q, order) in [(3u8, 24usize), (5, 120), (7, 336), (9, 720)] {
            let f = Gf::new(q).unwrap();
            assert_eq!(linear_group(&f, &sl2_gens(&f)).unwrap().order(), order);
        }
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = Gf::new(5).unwrap();
        let m = Mat::ints(&f, 3, &[1, 2, 0, 0, 1, 3, 1, 0, 1]);
        let mi = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &mi), Mat::identity(3));
        assert_eq!(f.mul(m.det(&f), mi.det(&f)), 1);
    }
}
