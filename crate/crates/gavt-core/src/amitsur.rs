//! Embeddability of the metacyclic groups `G(m, r)` in division rings, and
//! the even-order finite subgroups of quaternion division algebras over cubic
//! fields.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use num_integer::Integer;

use crate::arith::nt::{euler_phi, factorize, mult_order};
use crate::{Error, Result};

/// `G(m, r) = <a, b | a^m = 1, b^n = a^t, b a b^-1 = a^r>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GmrParams {
    pub m: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub n: u64,
}

impl GmrParams {
    /// Parameters with `r` reduced mod `m`. For `r = 1` the presentation is
    /// cyclic: `n = 1`, `s = m`, `t = 1`.
    pub fn new(m: u64, r: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("m must be positive".into()));
        }
        if (r.unsigned_abs()).gcd(&m) != 1 {
            return Err(Error::NotCoprime(r, m as i64));
        }
        let r = r.rem_euclid(m as i64) as u64;
        let n = mult_order(r as i64, m)?;
        let s = (r as i64 - 1).unsigned_abs().gcd(&m);
        Ok(GmrParams { m, r, s, t: m / s, n })
    }

    /// Same as [`GmrParams::new`] but with the exponent `n` imposed. Used for
    /// `m = 2`, where `b^2 = a` gives the cyclic group of order 4.
    pub fn with_order(m: u64, r: i64, n: u64) -> Result<Self> {
        let mut p = Self::new(m, r)?;
        if m == 2 {
            p.s = 2;
            p.t = 1;
        }
        p.n = n;
        Ok(p)
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }
}

pub fn gmr_params(m: u64, r: i64) -> Result<GmrParams> {
    GmrParams::new(m, r)
}

pub fn check_c1(g: &GmrParams) -> bool {
    g.n.gcd(&g.t) == 1 && g.s.gcd(&g.t) == 1
}

fn two_part(x: u64) -> (u32, u64) {
    let a = x.trailing_zeros();
    (a, x >> a)
}

pub fn check_c2(g: &GmrParams) -> bool {
    let (an, n1) = two_part(g.n);
    let (alpha, m1) = two_part(g.m);
    let (as_, s1) = two_part(g.s);
    let pow = 1u64 << alpha;
    an == 1
        && as_ == 1
        && alpha >= 2
        && n1 % 2 == 1
        && m1 % 2 == 1
        && s1 % 2 == 1
        && g.n.gcd(&g.t) == 2
        && g.s.gcd(&g.t) == 2
        && (g.r + 1).is_multiple_of(pow)
}

/// Auxiliary values attached to a prime `p | m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeAux {
    pub p: u64,
    pub alpha_p: u32,
    pub n_p: u64,
    pub delta_p: u64,
}

pub fn prime_aux(m: u64, r: i64, p: u64) -> Result<PrimeAux> {
    if p == 0 || !m.is_multiple_of(p) {
        return Err(Error::NotDivisor(p, m));
    }
    let mut rest = m;
    let mut alpha_p = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        alpha_p += 1;
    }
    Ok(PrimeAux { p, alpha_p, n_p: mult_order(r, rest)?, delta_p: mult_order(p as i64, rest)? })
}

fn pow(b: u64, e: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc.saturating_mul(b))
}

/// The embeddability criterion for `G(m, r)` evaluated on given parameters.
pub fn embeds_params(g: &GmrParams) -> Result<bool> {
    let c1 = check_c1(g);
    let c2 = check_c2(g);
    if !c1 && !c2 {
        return Ok(false);
    }
    if g.n == 2 && g.s == 2 && (g.r + 1).is_multiple_of(g.m) {
        return Ok(true);
    }
    for (q, _) in factorize(g.n) {
        let mut found = false;
        for (p, _) in factorize(g.m) {
            let aux = prime_aux(g.m, g.r as i64, p)?;
            if aux.n_p % q == 0 {
                continue;
            }
            let a = if p != 2 {
                let num = pow(p, aux.delta_p) - 1;
                // A non-integral quotient cannot satisfy the gcd condition.
                num.is_multiple_of(g.s) && q.gcd(&(num / g.s)) == 1
            } else {
                false
            };
            let b = p == 2 && q == 2 && c2 && (g.m / 4) % 2 == 1 && aux.delta_p % 2 == 1;
            if a || b {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn embeds_in_division_ring(m: u64, r: i64) -> Result<bool> {
    embeds_params(&GmrParams::new(m, r)?)
}

/// The group types that embed in division rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivRingGroupType {
    Cyclic { m: u64 },
    Gmr { m: u64, r: u64 },
    TGroup { m: u64 },
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl DivRingGroupType {
    /// Catalog label.
    pub fn label(&self) -> String {
        match *self {
            DivRingGroupType::Cyclic { m } => format!("C{m}"),
            DivRingGroupType::Gmr { m, r } => format!("G({m},{r})"),
            DivRingGroupType::TGroup { m: 1 } => "T*".into(),
            DivRingGroupType::TGroup { m } => format!("T*×C{m}"),
            DivRingGroupType::BinaryOctahedral => "O*".into(),
            DivRingGroupType::BinaryIcosahedral => "I*".into(),
        }
    }
}

/// Name of `G(m, r)`: cyclic when `n = 1` (or `m = 2`), dicyclic for
/// `n = s = 2`, `r = -1 mod m`, with `Dic8` reported as `Q8`.
pub fn group_label(g: &GmrParams) -> String {
    if g.n == 1 {
        return format!("C{}", g.m);
    }
    if g.m == 2 && g.n == 2 {
        return "C4".into();
    }
    if g.n == 2 && g.s == 2 && (g.r + 1).is_multiple_of(g.m) {
        return if g.m == 4 { "Q8".into() } else { format!("Dic{}", 2 * g.m) };
    }
    DivRingGroupType::Gmr { m: g.m, r: g.r }.label()
}

/// Moduli allowed by elements of order `m` in a degree-12 division algebra.
pub const SWEEP_MODULI: [u64; 8] = [2, 3, 4, 6, 7, 9, 14, 18];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub params: GmrParams,
    pub c1: bool,
    pub c2: bool,
    pub embeds: bool,
    pub label: String,
}

/// Every `G(m, r)` with `n = 2` for `m` in [`SWEEP_MODULI`].
pub fn sweep() -> Vec<SweepEntry> {
    let mut out = Vec::new();
    for m in SWEEP_MODULI {
        for r in 1..=m {
            if r.gcd(&m) != 1 {
                continue;
            }
            let params = if m == 2 {
                GmrParams::with_order(m, r as i64, 2).unwrap()
            } else {
                GmrParams::new(m, r as i64).unwrap()
            };
            if params.n != 2 {
                continue;
            }
            let embeds = embeds_params(&params).unwrap();
            out.push(SweepEntry {
                c1: check_c1(&params),
                c2: check_c2(&params),
                embeds,
                label: group_label(&params),
                params,
            });
        }
    }
    out
}

fn collect(pred: impl Fn(&SweepEntry) -> bool) -> Vec<(u64, String)> {
    let set: BTreeSet<(u64, String)> = sweep()
        .into_iter()
        .filter(|e| e.embeds && pred(e))
        .map(|e| (e.params.m, e.label))
        .collect();
    set.into_iter().collect()
}

/// Embeddable `G(m, r)` with `n = 2` under the first condition.
pub fn first_condition_groups() -> Vec<(u64, String)> {
    collect(|e| e.c1)
}

/// Embeddable `G(m, r)` with `n = 2` under the second condition.
pub fn second_condition_groups() -> Vec<(u64, String)> {
    collect(|e| e.c2)
}

/// All primes dividing `m` have odd multiplicative order of 2.
pub fn tgroup_admissible(m: u64) -> Result<bool> {
    if m.gcd(&6) != 1 {
        return Err(Error::NotCoprimeToSix(m));
    }
    Ok(factorize(m)
        .into_iter()
        .all(|(p, _)| mult_order(2, p).unwrap() % 2 == 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    pub maximal: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicCandidates {
    pub groups: Vec<Candidate>,
    pub excluded: Vec<(String, String)>,
}

impl CubicCandidates {
    pub fn labels(&self) -> BTreeSet<String> {
        self.groups.iter().map(|c| c.label.clone()).collect()
    }
}

/// Even-order finite subgroups of a quaternion division algebra over a cubic
/// field.
pub fn cubic_field_candidates() -> CubicCandidates {
    let mut groups: Vec<Candidate> = Vec::new();
    let mut excluded = Vec::new();
    let push = |groups: &mut Vec<Candidate>, label: String| {
        if !groups.iter().any(|c| c.label == label) {
            groups.push(Candidate { label, maximal: true, note: None });
        }
    };
    // Element orders: phi(m) divides 6.
    let orders: Vec<u64> = (1..=18u64).filter(|&m| 6 % euler_phi(m) == 0).collect();
    for &m in orders.iter().filter(|&&m| m % 2 == 0) {
        push(&mut groups, DivRingGroupType::Cyclic { m }.label());
    }
    for (_, label) in first_condition_groups().into_iter().chain(second_condition_groups()) {
        push(&mut groups, label);
    }
    for &m in orders.iter().filter(|&&m| m.gcd(&6) == 1) {
        if !tgroup_admissible(m).unwrap() {
            continue;
        }
        let label = DivRingGroupType::TGroup { m }.label();
        if m == 7 {
            excluded.push((label, "T*×C7 forces the center to be Q(ζ7), which is not cubic".to_string()));
        } else {
            push(&mut groups, label);
        }
    }
    excluded.push(("O*".into(), "O* forces sqrt(2) in the cubic center".into()));
    excluded.push(("I*".into(), "I* forces sqrt(5) in the cubic center".into()));
    for c in groups.iter_mut().filter(|c| c.label == "Q8") {
        c.maximal = false;
        c.note = Some("Q8 lies in T*, which embeds whenever Q8 does".into());
    }
    CubicCandidates { groups, excluded }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        let g = gmr_params(14, 13).unwrap();
        assert_eq!((g.s, g.t, g.n), (2, 7, 2));
        let g = gmr_params(10, 1).unwrap();
        assert_eq!((g.s, g.t, g.n), (10, 1, 1));
        let g = gmr_params(18, 17).unwrap();
        assert_eq!((g.s, g.t, g.n), (2, 9, 2));
        assert_eq!(gmr_params(6, 3), Err(Error::NotCoprime(3, 6)));
    }

    #[test]
    fn conditions() {
        let g = gmr_params(6, 5).unwrap();
        assert!(check_c1(&g));
        let g = gmr_params(4, 3).unwrap();
        assert!(check_c2(&g) && !check_c1(&g));
        let g = gmr_params(9, 8).unwrap();
        assert!(check_c1(&g) && !check_c2(&g));
    }

    #[test]
    fn aux() {
        let a = prime_aux(9, 8, 3).unwrap();
        assert_eq!((a.alpha_p, a.n_p, a.delta_p), (2, 1, 1));
        let a = prime_aux(14, 13, 7).unwrap();
        assert_eq!((a.alpha_p, a.n_p, a.delta_p), (1, 1, 1));
        let a = prime_aux(12, 11, 2).unwrap();
        assert_eq!((a.alpha_p, a.n_p, a.delta_p), (2, 2, 2));
        assert_eq!(prime_aux(12, 11, 5), Err(Error::NotDivisor(5, 12)));
    }

    #[test]
    fn embeddability() {
        assert!(embeds_in_division_ring(14, 13).unwrap());
        assert!(!embeds_in_division_ring(9, 8).unwrap());
        assert!(!embeds_in_division_ring(7, 6).unwrap());
        assert!(embeds_in_division_ring(4, 3).unwrap());
        assert_eq!(group_label(&gmr_params(14, 13).unwrap()), "Dic28");
    }

    #[test]
    fn enumerations() {
        let first = first_condition_groups();
        let want: Vec<(u64, String)> =
            [(2, "C4"), (6, "Dic12"), (14, "Dic28"), (18, "Dic36")].iter().map(|(m, s)| (*m, s.to_string())).collect();
        assert_eq!(first, want);
        assert_eq!(second_condition_groups(), [(4, "Q8".to_string())]);
    }

    #[test]
    fn tgroups() {
        assert!(tgroup_admissible(7).unwrap());
        assert!(!tgroup_admissible(5).unwrap());
        assert!(tgroup_admissible(1).unwrap());
        assert_eq!(tgroup_admissible(9), Err(Error::NotCoprimeToSix(9)));
    }

    #[test]
    fn cubic_candidates() {
        let r = cubic_field_candidates();
        let want: BTreeSet<String> = ["C2", "C4", "C6", "C14", "C18", "Q8", "Dic12", "Dic28", "Dic36", "T*"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(r.labels(), want);
        assert!(!r.groups.iter().find(|c| c.label == "Q8").unwrap().maximal);
        assert!(r.excluded.iter().any(|(l, _)| l == "O*"));
    }
}
