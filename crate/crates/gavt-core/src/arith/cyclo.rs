//! Elements of Q(ζ_N) stored as residues mod Φ_N, and square matrices over them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg;
use super::nt::{divisors, euler_phi, mobius};
use super::{Rat, RatPoly};

/// The `n`-th cyclotomic polynomial, as the Möbius product of `x^d - 1`.
pub fn cyclotomic_poly(n: u64) -> RatPoly {
    let mut num = RatPoly::one();
    let mut den = RatPoly::one();
    for d in divisors(n) {
        let f = &RatPoly::monomial(Rat::one(), d as usize) - &RatPoly::one();
        match mobius(n / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    num.div_exact(&den).expect("Möbius product is exact")
}

/// An element of Q(ζ_N): coefficients of `1, ζ, ..., ζ^{φ(N)-1}`.
#[derive(Clone, Debug)]
pub struct CycloNum {
    n: u64,
    c: Vec<Rat>,
}

fn reduce(n: u64, raw: Vec<Rat>) -> Vec<Rat> {
    let n_us = n as usize;
    let mut folded = vec![Rat::zero(); n_us.max(1)];
    for (i, x) in raw.into_iter().enumerate() {
        if !x.is_zero() {
            folded[i % n_us] += x;
        }
    }
    let phi = euler_phi(n) as usize;
    let r = RatPoly::new(folded).rem(&cyclotomic_poly(n));
    let mut c = r.coeffs().to_vec();
    c.resize(phi, Rat::zero());
    c
}

impl CycloNum {
    /// `Σ c_i ζ_N^i`, reduced mod Φ_N (any length of `c` is accepted).
    pub fn new(n: u64, c: Vec<Rat>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CycloNum { n, c: reduce(n, c) }
    }

    pub fn from_ints(n: u64, c: &[i64]) -> Self {
        Self::new(n, c.iter().map(|&x| super::rat(x)).collect())
    }

    pub fn from_rat(n: u64, r: Rat) -> Self {
        Self::new(n, vec![r])
    }

    pub fn zero(n: u64) -> Self {
        Self::from_rat(n, Rat::zero())
    }

    pub fn one(n: u64) -> Self {
        Self::from_rat(n, Rat::one())
    }

    /// `ζ_n^k` (negative `k` allowed).
    pub fn zeta(n: u64, k: i64) -> Self {
        let e = k.mod_floor(&(n as i64)) as usize;
        let mut c = vec![Rat::zero(); e + 1];
        c[e] = Rat::one();
        Self::new(n, c)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.c.iter().skip(1).all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element over conductor `m`, a multiple of `self.n`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.n), "lift target must be a multiple");
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut c = vec![Rat::zero(); (self.c.len().max(1) - 1) * step + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * step] = x.clone();
        }
        Self::new(m, c)
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let m = self.n.lcm(&o.n);
        (self.lift(m), o.lift(m))
    }

    /// Galois action `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        let mut c = vec![Rat::zero(); self.n as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(i as i64 * k).mod_floor(&n) as usize] += x;
        }
        Self::new(self.n, c)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    fn mult_matrix(&self) -> Vec<Vec<Rat>> {
        let phi = self.c.len();
        let cols: Vec<Vec<Rat>> = (0..phi)
            .map(|j| (self * &Self::zeta(self.n, j as i64)).c)
            .collect();
        (0..phi).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut e0 = vec![Rat::zero(); self.c.len()];
        e0[0] = Rat::one();
        let x = linalg::solve(&self.mult_matrix(), &e0)?;
        Some(CycloNum { n: self.n, c: x })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Minimal polynomial over Q (monic).
    pub fn min_poly(&self) -> RatPoly {
        let mut powers = vec![Self::one(self.n)];
        loop {
            let next = powers.last().unwrap() * self;
            powers.push(next);
            let k = powers.len();
            let m: Vec<Vec<Rat>> = (0..self.c.len())
                .map(|i| powers.iter().map(|p| p.c[i].clone()).collect())
                .collect();
            let ker = linalg::nullspace(&m);
            if let Some(v) = ker.first() {
                let lead = v[k - 1].clone();
                return RatPoly::new(v.iter().map(|x| x / &lead).collect());
            }
        }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n {
            return self.c == o.c;
        }
        let (a, b) = self.common(o);
        a.c == b.c
    }
}

impl Eq for CycloNum {}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        let (a, b) = self.common(o);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect();
        CycloNum { n: a.n, c }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        let (a, b) = self.common(o);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect();
        CycloNum { n: a.n, c }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        let (a, b) = self.common(o);
        let mut c = vec![Rat::zero(); a.c.len() + b.c.len()];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        CycloNum::new(a.n, c)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{x}")?,
                _ if x.is_one() => write!(f, "z{}^{i}", self.n)?,
                _ => write!(f, "({x})*z{}^{i}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Square matrix with entries in one cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMat {
    dim: usize,
    n: u64,
    e: Vec<CycloNum>,
}

impl CycMat {
    /// Builds from row-major entries, lifting them to a common conductor.
    pub fn new(dim: usize, entries: Vec<CycloNum>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count");
        let n = entries.iter().fold(1u64, |acc, x| acc.lcm(&x.n));
        let e = entries.into_iter().map(|x| x.lift(n)).collect();
        CycMat { dim, n, e }
    }

    pub fn from_ints(dim: usize, n: u64, entries: &[i64]) -> Self {
        Self::new(dim, entries.iter().map(|&x| CycloNum::from_ints(n, &[x])).collect())
    }

    pub fn identity(dim: usize, n: u64) -> Self {
        let e = (0..dim * dim)
            .map(|k| if k / dim == k % dim { CycloNum::one(n) } else { CycloNum::zero(n) })
            .collect();
        CycMat { dim, n, e }
    }

    pub fn diag(d: Vec<CycloNum>) -> Self {
        let dim = d.len();
        let n = d.iter().fold(1u64, |acc, x| acc.lcm(&x.n));
        let mut m = Self::identity(dim, n);
        for (i, x) in d.into_iter().enumerate() {
            m.e[i * dim + i] = x.lift(n);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.e[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.e
    }

    pub fn lift(&self, m: u64) -> Self {
        CycMat { dim: self.dim, n: m, e: self.e.iter().map(|x| x.lift(m)).collect() }
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        Self::new(self.dim, self.e.iter().map(|x| x * s).collect())
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.dim).fold(CycloNum::zero(self.n), |acc, i| &acc + self.get(i, i))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let d = self.dim + o.dim;
        let n = self.n.lcm(&o.n);
        let mut m = Self::identity(d, n);
        for i in 0..d {
            for j in 0..d {
                m.e[i * d + j] = if i < self.dim && j < self.dim {
                    self.get(i, j).lift(n)
                } else if i >= self.dim && j >= self.dim {
                    o.get(i - self.dim, j - self.dim).lift(n)
                } else {
                    CycloNum::zero(n)
                };
            }
        }
        m
    }

    /// Rational coordinates: each entry contributes `φ(N)` coefficients.
    pub fn flatten(&self) -> Vec<Rat> {
        self.e.iter().flat_map(|x| x.c.iter().cloned()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let (a, b) = if self.n == o.n {
            (self.clone(), o.clone())
        } else {
            let m = self.n.lcm(&o.n);
            (self.lift(m), o.lift(m))
        };
        let d = self.dim;
        let mut e = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = CycloNum::zero(a.n);
                for k in 0..d {
                    acc = &acc + &(a.get(i, k) * b.get(k, j));
                }
                e.push(acc);
            }
        }
        CycMat { dim: d, n: a.n, e }
    }

    /// Gauss-Jordan elimination; returns `(det, inverse)`.
    fn eliminate(&self) -> (CycloNum, Option<Self>) {
        let d = self.dim;
        let mut a: Vec<Vec<CycloNum>> = (0..d).map(|i| self.e[i * d..(i + 1) * d].to_vec()).collect();
        let mut inv = Self::identity(d, self.n);
        let mut b: Vec<Vec<CycloNum>> = (0..d).map(|i| inv.e[i * d..(i + 1) * d].to_vec()).collect();
        let mut det = CycloNum::one(self.n);
        for c in 0..d {
            let Some(p) = (c..d).find(|&i| !a[i][c].is_zero()) else {
                return (CycloNum::zero(self.n), None);
            };
            if p != c {
                a.swap(p, c);
                b.swap(p, c);
                det = -&det;
            }
            det = &det * &a[c][c];
            let pi = a[c][c].inv().expect("nonzero pivot");
            for j in 0..d {
                a[c][j] = &a[c][j] * &pi;
                b[c][j] = &b[c][j] * &pi;
            }
            for i in 0..d {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..d {
                        a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                        b[i][j] = &b[i][j] - &(&f * &b[c][j]);
                    }
                }
            }
        }
        inv.e = b.into_iter().flatten().collect();
        (det, Some(inv))
    }

    pub fn det(&self) -> CycloNum {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Option<Self> {
        self.eliminate().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(8), RatPoly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(12), RatPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(10), RatPoly::from_ints(&[1, -1, 1, -1, 1]));
        for n in 1..40 {
            assert_eq!(cyclotomic_poly(n).degree() as u64, euler_phi(n));
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycloNum::zeta(5, 1).conj(), CycloNum::zeta(5, 4));
        let c = CycloNum::from_rat(7, rat(3));
        assert_eq!(c.conj(), c);
        let r = &CycloNum::zeta(8, 1) + &CycloNum::zeta(8, -1);
        assert_eq!(r.conj(), r);
        assert_eq!(r.min_poly(), RatPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn sqrt5_identity() {
        let s = &(&CycloNum::zeta(5, 1) + &CycloNum::zeta(5, 4))
            - &(&CycloNum::zeta(5, 2) + &CycloNum::zeta(5, 3));
        assert_eq!((&s * &s).as_rat(), Some(rat(5)));
    }

    #[test]
    fn mixed_conductors_and_inverse() {
        let i = CycloNum::zeta(4, 1);
        let w = CycloNum::zeta(3, 1);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, CycloNum::zeta(12, 7));
        let x = &CycloNum::one(7) + &CycloNum::zeta(7, 2);
        assert_eq!(&x * &x.inv().unwrap(), CycloNum::one(7));
        assert_eq!(CycloNum::zeta(6, 1), &CycloNum::one(3) + &CycloNum::zeta(3, 1));
    }

    #[test]
    fn matrices() {
        let z = CycloNum::zeta(3, 1);
        let m = CycMat::new(2, vec![z.clone(), CycloNum::one(3), CycloNum::zero(3), z.conj()]);
        assert_eq!(m.det(), CycloNum::one(3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), CycMat::identity(2, 3));
        assert_eq!(m.trace(), CycloNum::from_rat(3, rat(-1)));
    }
}
