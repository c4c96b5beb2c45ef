//! Dense univariate polynomials over Q, lowest degree first.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    c: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn from_bigints(c: &[Int]) -> Self {
        Self::new(c.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero() -> Self {
        RatPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(a: Rat) -> Self {
        Self::new(vec![a])
    }

    /// `a * t^k`
    pub fn monomial(a: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    /// `t - a`
    pub fn linear(a: Rat) -> Self {
        Self::new(vec![-a, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&l.recip())
    }

    pub fn scale(&self, a: &Rat) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(g(t))`
    pub fn compose(&self, g: &RatPoly) -> Self {
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * g) + &Self::constant(a.clone()))
    }

    /// `self(t + a)`
    pub fn shift(&self, a: &Rat) -> Self {
        self.compose(&Self::new(vec![a.clone(), Rat::one()]))
    }

    /// `self(-t)`
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// `self(s t) / s^deg`, keeping a monic input monic.
    pub fn scale_var(&self, s: &Rat) -> Self {
        let d = self.degree();
        let mut pw = Rat::one();
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(a * &pw);
            pw *= s;
        }
        let mut sd = Rat::one();
        for _ in 0..d {
            sd *= s;
        }
        Self::new(c).scale(&sd.recip())
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut q = vec![Rat::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &dl;
            if !f.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &f * b;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> RatPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's square-free decomposition: `[(s_i, i)]` with `f = lc * prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let s = b.gcd(&d);
            b = b.div_exact(&s).unwrap();
            c = d.div_exact(&s).expect("s divides d");
            if s.degree() > 0 {
                out.push((s, i));
            }
            if b.degree() == 0 {
                break;
            }
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.c
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(Rat::is_integer)
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<Int> {
        let den = self
            .c
            .iter()
            .fold(Int::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<Int> = self
            .c
            .iter()
            .map(|a| (a * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(Int::zero(), |acc, a| acc.gcd(a));
        let sign = if self.lead().is_negative() { -Int::one() } else { Int::one() };
        ints.into_iter().map(|a| a / &g * &sign).collect()
    }

    /// Parses expressions like `t^4 - 5t^3 + 25*t^2 - 125 t + 625`.
    pub fn parse(s: &str) -> Result<RatPoly> {
        let bad = |m: &str| Error::Parse(alloc::format!("{m} in {s:?}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut terms: Vec<(Int, usize)> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = Int::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(bad("expected sign"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coef = if i > start {
                let digits: String = chars[start..i].iter().collect();
                digits.parse::<Int>().map_err(|_| bad("bad integer"))?
            } else {
                Int::one()
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                if i >= chars.len() || (chars[i] != 't' && chars[i] != 'x') {
                    return Err(bad("expected variable after '*'"));
                }
            }
            let mut exp = 0usize;
            if i < chars.len() && (chars[i] == 't' || chars[i] == 'x') {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let st = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if st == i {
                        return Err(bad("missing exponent"));
                    }
                    let e: String = chars[st..i].iter().collect();
                    exp = e.parse().map_err(|_| bad("bad exponent"))?;
                }
            } else if i == start {
                return Err(bad("empty term"));
            }
            terms.push((sign * coef, exp));
        }
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut c = vec![Int::zero(); deg + 1];
        for (a, e) in terms {
            c[e] += a;
        }
        Ok(Self::from_bigints(&c))
    }
}

fn fmt_rat(a: &Rat) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        alloc::format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = i == 0 || !mag.is_one();
            if show_coef {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.c.len().max(o.c.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.c.len().max(o.c.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, o: RatPoly) -> RatPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn parse_and_display() {
        let f = RatPoly::parse("t^4 - 5t^3 + 25*t^2 - 125 t + 625").unwrap();
        assert_eq!(f, p(&[625, -125, 25, -5, 1]));
        assert_eq!(f.to_string(), "t^4 - 5t^3 + 25t^2 - 125t + 625");
        assert_eq!(RatPoly::parse("t^2-5").unwrap(), p(&[-5, 0, 1]));
        assert_eq!(RatPoly::parse("-t+3").unwrap(), p(&[3, -1]));
        assert!(RatPoly::parse("t^").is_err());
        assert!(RatPoly::parse("").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = (&a * &p(&[2, 1])).gcd(&(&a * &p(&[3, 1])));
        assert_eq!(g, a);
    }

    #[test]
    fn yun() {
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[5, 0, 1]).pow(2)) * &p(&[2, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, [(p(&[2, 1]), 1), (p(&[5, 0, 1]), 2), (p(&[-1, 1]), 3)]);
        assert_eq!(f.squarefree(), &(&p(&[-1, 1]) * &p(&[5, 0, 1])) * &p(&[2, 1]));
    }

    #[test]
    fn compose_shift() {
        let f = p(&[16, 0, 0, 0, 1]);
        assert_eq!(f.shift(&Rat::from_integer(2.into())), p(&[32, 32, 24, 8, 1]));
        assert_eq!(p(&[1, 2, 3]).negate_var(), p(&[1, -2, 3]));
    }
}
