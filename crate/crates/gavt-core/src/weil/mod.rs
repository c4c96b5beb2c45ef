//! Weil polynomials and Honda-Tate endomorphism algebras.
//!
//! [`is_weil_poly`] decides the root-modulus condition exactly: the
//! functional equation, then the real transform `x = t + q/t` must have all
//! roots real with `x^2 <= 4q` (a Sturm count on the polynomial in `x^2`).
//! [`end_algebra`] computes the center, Brauer invariants and index.

mod local;
pub mod sturm;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::nt::{exact_sqrt, prime_power};
use crate::arith::{zfactor, Int, Rat, RatPoly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceKind {
    Real,
    Complex,
    AboveP,
    AwayFromP,
}

impl PlaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlaceKind::Real => "real",
            PlaceKind::Complex => "complex",
            PlaceKind::AboveP => "finite-above-p",
            PlaceKind::AwayFromP => "finite-away-from-p",
        }
    }
}

/// Local Brauer invariant at one place of the center (value in `[0, 1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceInvariant {
    pub kind: PlaceKind,
    pub value: Rat,
    pub local_degree: u32,
}

impl fmt::Display for PlaceInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.value)
    }
}

/// Endomorphism algebra of a simple isogeny class: center `Q[t]/(h)`,
/// invariants, index `d`, and dimension `g` of the variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgDescriptor {
    pub h: RatPoly,
    pub q: u64,
    pub e: u32,
    pub d: u32,
    pub g: u32,
    pub invariants: Vec<PlaceInvariant>,
    pub dim_q: u32,
    pub commutative: bool,
}

impl EndAlgDescriptor {
    pub fn to_json(&self) -> Value {
        let h: Vec<Value> = self
            .h
            .coeffs()
            .iter()
            .map(|c| match c.to_integer().to_i64() {
                Some(i) if c.is_integer() => json!(i),
                _ => json!(c.to_string()),
            })
            .collect();
        let invs: Vec<Value> = self
            .invariants
            .iter()
            .map(|v| json!({"kind": v.kind.as_str(), "value": format_frac(&v.value)}))
            .collect();
        json!({
            "h": h, "q": self.q, "e": self.e, "d": self.d, "g": self.g,
            "invariants": invs, "commutative": self.commutative,
        })
    }

    /// Invariants of the given kind.
    pub fn values(&self, kind: PlaceKind) -> Vec<Rat> {
        self.invariants.iter().filter(|v| v.kind == kind).map(|v| v.value.clone()).collect()
    }
}

fn format_frac(r: &Rat) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    Ordinary,
    Supersingular,
}

fn check_input(f: &RatPoly) -> Result<()> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    if !f.is_monic() || !f.is_integral() {
        return Err(Error::Invalid(alloc::format!("{f} is not monic with integer coefficients")));
    }
    Ok(())
}

/// `f(t) = t^m P(t + q/t)`; `None` if the remainder does not vanish.
fn real_transform(f: &RatPoly, q: &Rat) -> Option<RatPoly> {
    let m = f.degree() / 2;
    let base = RatPoly::new(alloc::vec![q.clone(), Rat::zero(), Rat::one()]);
    let mut rest = f.clone();
    let mut p = alloc::vec![Rat::zero(); m + 1];
    for k in (0..=m).rev() {
        let c = rest.coeff(m + k);
        if c.is_zero() {
            continue;
        }
        let term = &RatPoly::monomial(c.clone(), m - k) * &base.pow(k as u32);
        rest = &rest - &term;
        p[k] = c;
    }
    rest.is_zero().then(|| RatPoly::new(p))
}

/// Exact Weil test for any degree: every complex root has modulus `sqrt(q)`.
pub(crate) fn weil_check(f: &RatPoly, q: u64) -> bool {
    let qr = Rat::from(Int::from(q));
    let mut f = f.clone();
    let mut strip = |g: RatPoly| {
        while let Some(r) = f.div_exact(&g) {
            if f.degree() == 0 {
                break;
            }
            f = r;
        }
    };
    strip(RatPoly::new(alloc::vec![-qr.clone(), Rat::zero(), Rat::one()]));
    if let Some(s) = exact_sqrt(q) {
        let s = Rat::from(Int::from(s));
        strip(RatPoly::linear(-s.clone()));
        strip(RatPoly::linear(s));
    }
    let n = f.degree();
    if n % 2 == 1 {
        return false;
    }
    let m = n / 2;
    // t^{2m} f(q/t) = q^m f(t), coefficient-wise.
    let qpow = |k: usize| qr.pow(k as i32);
    for i in 0..=n {
        if f.coeff(i) * qpow(i) != f.coeff(n - i) * qpow(m) {
            return false;
        }
    }
    let Some(p) = real_transform(&f, &qr) else {
        return false;
    };
    if p.degree() == 0 {
        return true;
    }
    let ps = p.squarefree();
    if sturm::count_real_roots(&ps) != ps.degree() {
        return false;
    }
    // Graeffe step: roots y = x^2 of E(y)^2 - y O(y)^2 must lie in [0, 4q].
    let c = ps.coeffs();
    let even = RatPoly::new(c.iter().step_by(2).cloned().collect());
    let odd = RatPoly::new(c.iter().skip(1).step_by(2).cloned().collect());
    let y = RatPoly::monomial(Rat::one(), 1);
    let g = &(&even * &even) - &(&y * &(&odd * &odd));
    let gs = g.squarefree();
    sturm::count_roots_in(&gs, &-Rat::one(), &(qr * Rat::from(Int::from(4)))) == gs.degree()
}

/// Whether `f` (monic, integral, even degree at most 6) is a `q`-Weil polynomial.
pub fn is_weil_poly(f: &RatPoly, q: u64) -> Result<bool> {
    prime_power(q)?;
    check_input(f)?;
    let n = f.degree();
    if n % 2 == 1 || n > 6 {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(weil_check(f, q))
}

/// Writes `f = h^d` with `h` irreducible over Q.
pub fn split_minimal(f: &RatPoly) -> Result<(RatPoly, u32)> {
    check_input(f)?;
    let sq = f.squarefree_decomposition();
    if sq.len() != 1 {
        return Err(Error::NotElementary);
    }
    let (s, d) = sq.into_iter().next().unwrap();
    let fac = zfactor::factor_over_q(&s);
    if fac.len() != 1 {
        return Err(Error::NotElementary);
    }
    Ok((fac[0].0.clone(), d))
}

/// Brauer invariants of the center `Q[t]/(h)` for the Weil number `t`.
pub fn local_invariants(h: &RatPoly, q: u64) -> Result<Vec<PlaceInvariant>> {
    let (p, a) = prime_power(q)?;
    check_input(h)?;
    let mut out = Vec::new();
    local::above_p(&local::Ctx { p, a }, h, None, None, &mut out)?;
    let real = sturm::count_real_roots(h);
    for _ in 0..real {
        out.push(PlaceInvariant { kind: PlaceKind::Real, value: Rat::new(Int::one(), Int::from(2)), local_degree: 1 });
    }
    for _ in 0..(h.degree() - real) / 2 {
        out.push(PlaceInvariant { kind: PlaceKind::Complex, value: Rat::zero(), local_degree: 2 });
    }
    Ok(out)
}

/// Least common denominator of the invariant values.
pub fn division_index(invs: &[PlaceInvariant]) -> u32 {
    invs.iter()
        .fold(Int::one(), |acc, v| acc.lcm(v.value.denom()))
        .to_u32()
        .expect("small index")
}

/// Endomorphism algebra of the isogeny class with characteristic polynomial `f`.
pub fn end_algebra(f: &RatPoly, q: u64) -> Result<EndAlgDescriptor> {
    prime_power(q)?;
    check_input(f)?;
    if f.degree() > 6 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    if !weil_check(f, q) {
        return Err(Error::NotWeil);
    }
    let (h, split) = split_minimal(f)?;
    let invariants = local_invariants(&h, q)?;
    let d = division_index(&invariants);
    if split > 1 && split != d {
        return Err(Error::InconsistentTate { split, index: d });
    }
    let e = h.degree() as u32;
    Ok(EndAlgDescriptor {
        h,
        q,
        e,
        d,
        g: d * e / 2,
        invariants,
        dim_q: d * d * e,
        commutative: d == 1,
    })
}

/// Ordinary iff the trace `beta` of `t^2 - beta t + q` is prime to `p`.
pub fn elliptic_kind(f: &RatPoly, q: u64) -> Result<EllipticKind> {
    let (p, _) = prime_power(q)?;
    check_input(f)?;
    if f.degree() != 2 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    if !weil_check(f, q) {
        return Err(Error::NotWeil);
    }
    let beta = -f.coeff(1).to_integer();
    Ok(if beta.abs().gcd(&Int::from(p)).is_one() { EllipticKind::Ordinary } else { EllipticKind::Supersingular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    fn sorted(mut v: Vec<(PlaceKind, Rat)>) -> Vec<(PlaceKind, Rat)> {
        v.sort();
        v
    }

    fn pairs(invs: &[PlaceInvariant]) -> Vec<(PlaceKind, Rat)> {
        sorted(invs.iter().map(|v| (v.kind, v.value.clone())).collect())
    }

    #[test]
    fn weil_examples() {
        assert!(is_weil_poly(&p("t^2-5"), 5).unwrap());
        assert!(is_weil_poly(&p("t^4+16"), 4).unwrap());
        assert!(!is_weil_poly(&p("t^2-6"), 5).unwrap());
        assert!(is_weil_poly(&p("t^2-t+5"), 5).unwrap());
        assert!(!is_weil_poly(&p("t^2-5t+5"), 5).unwrap());
        assert!(is_weil_poly(&p("t^2-4t+4"), 4).unwrap());
        assert!(is_weil_poly(&p("t^6+27"), 3).unwrap() == weil_check(&p("t^6+27"), 3));
        assert_eq!(is_weil_poly(&p("t^3-1"), 5), Err(Error::UnsupportedDegree(3)));
        assert_eq!(is_weil_poly(&p("t^8+1"), 5), Err(Error::UnsupportedDegree(8)));
    }

    #[test]
    fn split() {
        assert_eq!(split_minimal(&p("t^2-5")).unwrap(), (p("t^2-5"), 1));
        assert_eq!(split_minimal(&p("t^2-6t+9")).unwrap(), (p("t-3"), 2));
        let prod = &p("t^2-5") * &p("t^2-t+5");
        assert_eq!(split_minimal(&prod), Err(Error::NotElementary));
        assert_eq!(split_minimal(&p("t^2-1")), Err(Error::NotElementary));
    }

    #[test]
    fn invariants() {
        let half = ratio(1, 2);
        let zero = Rat::zero();
        let r = local_invariants(&p("t^2-5"), 5).unwrap();
        assert_eq!(
            pairs(&r),
            sorted(alloc::vec![(PlaceKind::Real, half.clone()), (PlaceKind::Real, half.clone()), (PlaceKind::AboveP, zero.clone())])
        );
        let r = local_invariants(&p("t^2-t+5"), 5).unwrap();
        assert_eq!(pairs(&r), sorted(alloc::vec![(PlaceKind::AboveP, zero.clone()), (PlaceKind::AboveP, zero.clone()), (PlaceKind::Complex, zero.clone())]));
        let r = local_invariants(&p("t-3"), 9).unwrap();
        assert_eq!(pairs(&r), sorted(alloc::vec![(PlaceKind::AboveP, half.clone()), (PlaceKind::Real, half.clone())]));
        assert_eq!(division_index(&[]), 1);
    }

    #[test]
    fn algebras() {
        let a = end_algebra(&p("t^4+16"), 4).unwrap();
        assert_eq!((a.e, a.d, a.g, a.commutative), (4, 1, 2, true));
        let b = end_algebra(&p("t^2-5"), 5).unwrap();
        assert_eq!((b.e, b.d, b.g, b.dim_q), (2, 2, 2, 8));
        let c = end_algebra(&p("t-3"), 9).unwrap();
        assert_eq!((c.e, c.d, c.g), (1, 2, 1));
        let c2 = end_algebra(&p("t^2-6t+9"), 9).unwrap();
        assert_eq!((c2.e, c2.d, c2.g), (1, 2, 1));
        // q = 25, beta = 0: center Q(i), ramified above 5 with d = 2.
        let d = end_algebra(&p("t^2+25"), 25).unwrap();
        assert_eq!((d.e, d.d, d.g), (2, 2, 2));
        assert_eq!(end_algebra(&p("t^2+t+1"), 5), Err(Error::NotWeil));
        let j = b.to_json();
        assert_eq!(j["d"], 2);
        assert_eq!(j["invariants"][0]["value"], "0/1");
    }

    #[test]
    fn elliptic() {
        assert_eq!(elliptic_kind(&p("t^2-t+5"), 5).unwrap(), EllipticKind::Ordinary);
        assert_eq!(elliptic_kind(&p("t^2+9"), 9).unwrap(), EllipticKind::Supersingular);
        assert_eq!(elliptic_kind(&p("t^2-6t+9"), 9).unwrap(), EllipticKind::Supersingular);
    }
}
