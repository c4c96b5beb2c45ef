//! Elementary number theory on machine integers.

use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, Rat};
use crate::{Error, Result};

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Splits `q = p^a`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Ok(f[0])
    } else {
        Err(Error::NotPrimePower(q))
    }
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi of 0");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..).take_while(|k| k * k <= n).filter(|k| n.is_multiple_of(*k)).collect();
    let mut hi: Vec<u64> = d.iter().rev().map(|k| n / k).filter(|k| k * k != n).collect();
    d.append(&mut hi);
    d
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Least `n >= 1` with `r^n = 1 mod m`; the modulus 1 gives 1.
pub fn mult_order(r: i64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    let rr = r.rem_euclid(m as i64) as u64;
    if rr.gcd(&m) != 1 {
        return Err(Error::NotCoprime(r, m as i64));
    }
    let mut n = euler_phi(m);
    for (p, _) in factorize(n) {
        while n.is_multiple_of(p) && pow_mod(rr, n / p, m) == 1 {
            n /= p;
        }
    }
    Ok(n)
}

/// p-adic valuation of a big integer; `None` for zero.
pub fn padic_val_int(x: &Int, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = Int::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

pub fn padic_val(x: &Rat, p: u64) -> Result<i64> {
    let n = padic_val_int(x.numer(), p).ok_or(Error::ZeroValuation)?;
    let d = padic_val_int(x.denom(), p).unwrap_or(0);
    Ok(n - d)
}

/// Square-free part with sign: `n = s * k^2` with `s` square-free.
pub fn squarefree_part(n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let s = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product::<i64>();
    s * n.signum()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Fundamental discriminant of `Q(sqrt(d))` for square-free `d != 1`.
pub fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Whether `Q(sqrt(d))` lies in `Q(zeta_n)` (conductor-discriminant rule).
pub fn quadratic_in_cyclotomic(d: i64, n: u64) -> bool {
    let disc = fundamental_discriminant(d).unsigned_abs();
    n.is_multiple_of(disc)
}

/// Smallest square-free `d > 1` with `Q(sqrt(d))` inside `Q(zeta_n)`.
pub fn real_quadratic_subfield(n: u64) -> Option<u64> {
    (2..=n)
        .filter(|&d| is_squarefree(d))
        .find(|&d| quadratic_in_cyclotomic(d as i64, n))
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = x / 2 + 1;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(18), 6);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn phi_divisor_sum() {
        for n in 1..=1000u64 {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(13, 14), Ok(2));
        assert_eq!(mult_order(1, 9), Ok(1));
        assert_eq!(mult_order(2, 7), Ok(3));
        assert_eq!(mult_order(5, 1), Ok(1));
        assert_eq!(mult_order(2, 6), Err(Error::NotCoprime(2, 6)));
    }

    #[test]
    fn order_brute_force() {
        for m in 1..=100u64 {
            for r in 0..m as i64 {
                if (r as u64).gcd(&m) != 1 && m > 1 {
                    continue;
                }
                let n = mult_order(r, m).unwrap();
                assert_eq!(pow_mod(r as u64, n, m), 1 % m);
                for k in 1..n {
                    assert_ne!(pow_mod(r as u64, k, m), 1 % m, "r={r} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&ratio(5, 1), 5), Ok(1));
        assert_eq!(padic_val(&ratio(3, 4), 2), Ok(-2));
        assert_eq!(padic_val(&ratio(16, 1), 2), Ok(4));
        assert_eq!(padic_val(&ratio(0, 1), 2), Err(Error::ZeroValuation));
    }

    #[test]
    fn real_quadratic() {
        assert_eq!(real_quadratic_subfield(5), Some(5));
        assert_eq!(real_quadratic_subfield(7), None);
        assert_eq!(real_quadratic_subfield(8), Some(2));
        assert_eq!(real_quadratic_subfield(10), Some(5));
        assert_eq!(real_quadratic_subfield(12), Some(3));
        let candidates: Vec<u64> = (3..=18)
            .filter(|&n| matches!(euler_phi(n), 2 | 4 | 6))
            .filter(|&n| euler_phi(n) != 2)
            .collect();
        let with: Vec<u64> = candidates
            .into_iter()
            .filter(|&n| real_quadratic_subfield(n).is_some())
            .collect();
        assert_eq!(with, [5, 8, 10, 12]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(-20), -5);
        assert_eq!(squarefree_part(-64), -1);
        assert_eq!(squarefree_part(12), 3);
    }
}
