//! Sturm sequences over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{Rat, RatPoly};

fn sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        seq.push(-&r);
    }
    seq.pop();
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn at(seq: &[RatPoly], x: &Rat) -> usize {
    variations(seq.iter().map(|q| sign(&q.eval(x))))
}

fn at_infinity(seq: &[RatPoly], positive: bool) -> usize {
    variations(seq.iter().map(|q| {
        let s = sign(&q.lead());
        if !positive && q.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &RatPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let seq = sequence(p);
    at_infinity(&seq, false) - at_infinity(&seq, true)
}

/// Number of distinct roots in the half-open interval `(a, b]`.
pub fn count_roots_in(p: &RatPoly, a: &Rat, b: &Rat) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let seq = sequence(p);
    at(&seq, a) - at(&seq, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn counts() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&p), 2);
        assert_eq!(count_roots_in(&p, &rat(0), &rat(2)), 1);
        assert_eq!(count_real_roots(&RatPoly::from_ints(&[1, 0, 1])), 0);
        let cubic = RatPoly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(count_real_roots(&cubic), 3);
        assert_eq!(count_roots_in(&cubic, &rat(-1), &rat(1)), 2);
    }
}
