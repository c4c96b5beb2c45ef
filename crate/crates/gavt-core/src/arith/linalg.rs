//! Dense Gaussian elimination over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r { m.split_at_mut(r) } else { m.split_at_mut(i) };
                let (src, dst) = if i < r { (&bottom[0], &mut top[i]) } else { (&top[r], &mut bottom[0]) };
                for (d, s) in dst.iter_mut().zip(src.iter()).skip(c) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `M x = b` for square invertible `M`.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() != n || piv.last() == Some(&n) {
        return None;
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a);
        assert_eq!(k.len(), 1);
        for row in &a {
            let s: Rat = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solves() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(x, [crate::arith::ratio(4, 5), crate::arith::ratio(7, 5)]);
        assert!(solve(&m(&[&[1, 1], &[2, 2]]), &[rat(1), rat(2)]).is_none());
    }
}
