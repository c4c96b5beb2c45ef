//! Polynomials over a prime field F_p with `p < 2^31`, and their factorization
//! (square-free decomposition, distinct-degree and equal-degree splitting).

use alloc::vec;
use alloc::vec::Vec;

use super::nt::pow_mod;

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    /// Reduction of signed integer coefficients.
    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        Self::new(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lead());
        self.scale(li)
    }

    pub fn scale(&self, a: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|x| x * a % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| g(&self.c, i) + g(&o.c, i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(p, (0..n).map(|i| g(&self.c, i) + p - g(&o.c, i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.degree();
        let li = self.inv(d.lead());
        let mut q = vec![0u64; self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let f = r[k + dd] * li % p;
            if f != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - f * b % p) % p;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
        let li = if r0.is_zero() { 1 } else { self.inv(r0.lead()) };
        (r0.scale(li), s0.scale(li), t0.scale(li))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a * (i as u64 % p) % p)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (acc * x + a) % self.p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        for (s, m) in self.monic().sqf_decomp() {
            for g in s.ddf() {
                for h in g.1.edf(g.0) {
                    out.push((h, m));
                }
            }
        }
        out.sort();
        out
    }

    /// Degrees of the irreducible factors of a square-free polynomial.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factor().iter().map(|(f, _)| f.degree()).collect();
        d.sort_unstable();
        d
    }

    /// Whether this polynomial is irreducible over F_p.
    pub fn is_irreducible(&self) -> bool {
        self.degree() >= 1 && {
            let f = self.factor();
            f.len() == 1 && f[0].1 == 1
        }
    }

    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Square-free decomposition over F_p, accounting for p-th powers.
    fn sqf_decomp(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        if df.is_zero() {
            for (g, m) in f.pth_root().sqf_decomp() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut i = 1u32;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.degree() > 0 {
            for (g, m) in c.pth_root().sqf_decomp() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn ddf(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree() > 0 {
            out.push((f.degree(), f));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) with a fixed seed.
    fn edf(&self, d: usize) -> Vec<FpPoly> {
        let p = self.p;
        let n = self.degree();
        if n == d {
            return vec![self.clone()];
        }
        let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ (n as u64) ^ (p << 17);
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        loop {
            let a = Self::new(p, (0..n).map(|_| next() % p).collect());
            if a.degree() == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = ((p as u128).pow(d as u32) - 1) / 2;
                a.pow_mod(e, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            if g.degree() > 0 && g.degree() < n {
                let mut out = g.edf(d);
                out.extend(self.div_rem(&g).0.monic().edf(d));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = FpPoly::from_i64(2, &[1, 0, 0, 0, 1]);
        let fac = f.factor();
        assert_eq!(fac, [(FpPoly::from_i64(2, &[1, 1]), 4)]);
        let f = FpPoly::from_i64(3, &[1, 0, 2, 0, 1]);
        assert_eq!(f.factor(), [(FpPoly::from_i64(3, &[1, 0, 1]), 2)]);
        let phi8 = FpPoly::from_i64(3, &[1, 0, 0, 0, 1]);
        assert_eq!(phi8.factor_degrees(), [2, 2]);
        let phi10 = FpPoly::from_i64(3, &[1, -1, 1, -1, 1]);
        assert!(phi10.is_irreducible());
    }

    #[test]
    fn factor_product_roundtrip() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = FpPoly::from_i64(p, &[3, 1, 4, 1, 5, 9, 2, 6, 1]);
            let fac = f.factor();
            let mut prod = FpPoly::one(p);
            for (g, m) in &fac {
                assert!(g.degree() >= 1);
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f.monic(), "p={p}");
        }
    }
}
