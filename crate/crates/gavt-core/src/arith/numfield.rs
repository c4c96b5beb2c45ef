//! Roots of unity in a number field `Q[t]/(h)`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::nt::{divisors, euler_phi, mobius};
use super::{zfactor, Int, Rat, RatPoly};

/// Power sums `p_1..p_m` of the roots of the monic `h`.
fn power_sums(h: &RatPoly, m: usize) -> Vec<Rat> {
    let e = h.degree();
    let a = |k: usize| -> Rat { if k <= e { h.coeff(e - k) } else { Rat::zero() } };
    let mut p = vec![Rat::zero(); m + 1];
    p[0] = Rat::from_integer(e.into());
    for j in 1..=m {
        let mut s = if j <= e { a(j) * Rat::from_integer(j.into()) } else { Rat::zero() };
        for i in 1..j.min(e + 1) {
            s += a(i) * &p[j - i];
        }
        p[j] = -s;
    }
    p
}

/// Ramanujan sum: `Σ ζ_n^{kr}` over `k` prime to `n`.
fn ramanujan(n: u64, r: u64) -> i64 {
    let g = n.gcd(&r);
    divisors(g).into_iter().map(|d| mobius(n / d) * d as i64).sum()
}

/// `∏_σ h(t - c σ(ζ_n))` over the Galois group of `Q(ζ_n)`, from the power
/// sums of its roots `α + c ζ_n^k`.
pub fn norm_poly(h: &RatPoly, n: u64, c: i64) -> RatPoly {
    let h = h.monic();
    let dn = h.degree() * euler_phi(n) as usize;
    let ph = power_sums(&h, dn);
    let cr = Rat::from_integer(c.into());
    let mut binom = vec![Int::one()];
    let mut pn = vec![Rat::zero(); dn + 1];
    for m in 1..=dn {
        let mut next = vec![Int::one(); m + 1];
        for j in 1..m {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
        let mut s = Rat::zero();
        let mut cpow = Rat::one();
        for j in (0..=m).rev() {
            let r = ramanujan(n, (m - j) as u64);
            if r != 0 {
                s += Rat::from_integer(&binom[j] * Int::from(r)) * &cpow * &ph[j];
            }
            cpow *= &cr;
        }
        pn[m] = s;
    }
    let mut a = vec![Rat::one(); dn + 1];
    for k in 1..=dn {
        let mut s = pn[k].clone();
        for i in 1..k {
            s += &a[i] * &pn[k - i];
        }
        a[k] = -s / Rat::from_integer(k.into());
    }
    a.reverse();
    RatPoly::new(a)
}

/// Number of irreducible factors of the squarefree `h` over `Q(ζ_n)`.
pub fn factor_count_over_cyclotomic(h: &RatPoly, n: u64) -> usize {
    if euler_phi(n) == 1 {
        return zfactor::factor_over_q(h).len();
    }
    for c in 1.. {
        let nm = norm_poly(h, n, c);
        if zfactor::squarefree_mod_small_prime(&nm) {
            return zfactor::factor_over_q(&nm).len();
        }
    }
    unreachable!()
}

/// Whether `Q[t]/(h)` contains a primitive `n`-th root of unity (`h` irreducible).
pub fn contains_zeta(h: &RatPoly, n: u64) -> bool {
    let phi = euler_phi(n) as usize;
    if phi == 1 {
        return true;
    }
    if !h.degree().is_multiple_of(phi) {
        return false;
    }
    factor_count_over_cyclotomic(h, n) == phi
}

/// Order of the group of roots of unity in `Q[t]/(h)` (`h` irreducible).
pub fn roots_of_unity_order(h: &RatPoly) -> u64 {
    let e = h.degree() as u64;
    let mut cands: Vec<u64> = (3..=4 * e * e + 2)
        .filter(|&n| n % 2 == 0 && e.is_multiple_of(euler_phi(n)))
        .collect();
    cands.sort_unstable_by(|a, b| b.cmp(a));
    cands.into_iter().find(|&n| contains_zeta(h, n)).unwrap_or(2)
}

/// `h(√q · t) / q^{deg/2}` for square `q`: the minimal polynomial of `π/√q`.
pub fn normalized(h: &RatPoly, sqrt_q: u64) -> RatPoly {
    h.scale_var(&Rat::from_integer(sqrt_q.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclo::cyclotomic_poly;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn quadratic_fields() {
        assert_eq!(roots_of_unity_order(&p("t^2+1")), 4);
        assert_eq!(roots_of_unity_order(&p("t^2+t+1")), 6);
        assert_eq!(roots_of_unity_order(&p("t^2+2")), 2);
        assert_eq!(roots_of_unity_order(&p("t^2-2t+4")), 6);
        assert_eq!(roots_of_unity_order(&p("t^2-5")), 2);
    }

    #[test]
    fn cyclotomic_fields() {
        for n in [5u64, 7, 8, 9, 12, 14, 18] {
            let w = if n % 2 == 0 { n } else { 2 * n };
            assert_eq!(roots_of_unity_order(&cyclotomic_poly(n)), w, "n = {n}");
        }
    }

    #[test]
    fn weil_quartics() {
        assert_eq!(roots_of_unity_order(&p("t^4+16")), 8);
        assert_eq!(roots_of_unity_order(&p("t^4-9t^2+81")), 12);
        assert_eq!(roots_of_unity_order(&p("t^4+2t^2+25")), 6);
        assert_eq!(roots_of_unity_order(&p("t^4-6t^2+49")), 2);
    }

    #[test]
    fn normalized_cyclotomic() {
        assert_eq!(normalized(&p("t^4-9t^2+81"), 3), cyclotomic_poly(12));
        assert_eq!(normalized(&p("t^4-2t^3+4t^2-8t+16"), 2), cyclotomic_poly(10));
    }
}
