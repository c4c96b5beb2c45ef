//! Places above p of the field Q[t]/(h): Newton polygon, residual
//! polynomials mod p, and a shift step for repeated linear residual factors.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{PlaceInvariant, PlaceKind};
use crate::arith::fp::FpPoly;
use crate::arith::nt::padic_val_int;
use crate::arith::{Int, Rat, RatPoly};
use crate::{Error, Result};

/// Lower convex hull of `(i, v_p(a_i))`, as indices into the coefficients.
fn lower_hull(vals: &[Option<i64>]) -> Vec<usize> {
    let pts: Vec<(usize, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as i64 - x1 as i64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as i64 - x1 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.into_iter().map(|(i, _)| i).collect()
}

fn frac(x: Rat) -> Rat {
    let f = x.floor();
    x - f
}

pub(super) struct Ctx {
    pub p: u64,
    pub a: u32,
}

/// Appends the places above `p` of roots with valuation `> floor`.
/// `norm_slope` overrides the valuation used for the local invariant (set by
/// the shift step, which preserves the original roots' valuation).
pub(super) fn above_p(
    ctx: &Ctx,
    h: &RatPoly,
    floor: Option<&Rat>,
    norm_slope: Option<&Rat>,
    out: &mut Vec<PlaceInvariant>,
) -> Result<()> {
    let coeffs = h.to_ints().ok_or_else(|| Error::Invalid(format!("{h} is not integral")))?;
    let vals: Vec<Option<i64>> = coeffs.iter().map(|c| padic_val_int(c, ctx.p)).collect();
    let hull = lower_hull(&vals);
    let pi = Int::from(ctx.p);
    for w in hull.windows(2) {
        let (i0, i1) = (w[0], w[1]);
        let (v0, v1) = (vals[i0].unwrap(), vals[i1].unwrap());
        let slope = Rat::new(Int::from(v0 - v1), Int::from((i1 - i0) as i64));
        if floor.is_some_and(|f| slope <= *f) {
            continue;
        }
        let u = slope.numer().to_i64().unwrap();
        let e = slope.denom().to_i64().unwrap() as usize;
        let k = (i1 - i0) / e;
        let residual: Vec<u64> = (0..=k)
            .map(|j| {
                let idx = i0 + j * e;
                let c = &coeffs[idx];
                if c.is_zero() || vals[idx] != Some(v0 - j as i64 * u) {
                    return 0;
                }
                let unit = c / pi.pow((v0 - j as i64 * u) as u32);
                unit.mod_floor(&pi).to_u64().unwrap()
            })
            .collect();
        let phi_all = FpPoly::new(ctx.p, residual).factor();
        let lam = norm_slope.cloned().unwrap_or_else(|| slope.clone());
        for (phi, mult) in phi_all {
            let fdeg = phi.degree();
            let local_degree = (e * fdeg) as u32;
            if mult == 1 {
                let value = frac(&lam * Rat::from(Int::from(local_degree)) / Rat::from(Int::from(ctx.a)));
                out.push(PlaceInvariant { kind: PlaceKind::AboveP, value, local_degree });
            } else if e == 1 && fdeg == 1 {
                let root = (ctx.p - phi.coeffs()[0]) % ctx.p;
                let shift = Rat::from(Int::from(root) * pi.pow(u as u32));
                let shifted = h.shift(&shift);
                above_p(ctx, &shifted, Some(&slope), Some(&lam), out)?;
            } else {
                let unit = &lam * Rat::from(Int::from(local_degree)) / Rat::from(Int::from(ctx.a));
                if !unit.is_integer() {
                    return Err(Error::UnsupportedFactorization(format!(
                        "{h}: residual factor of degree {fdeg} with multiplicity {mult} at slope {slope}"
                    )));
                }
                out.push(PlaceInvariant {
                    kind: PlaceKind::AboveP,
                    value: Rat::zero(),
                    local_degree: local_degree * mult,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull() {
        let v = [Some(1), Some(0), Some(0)];
        assert_eq!(lower_hull(&v), [0, 1, 2]);
        let v = [Some(4), None, None, None, Some(0)];
        assert_eq!(lower_hull(&v), [0, 4]);
        let v = [Some(5), Some(5), Some(3), Some(3), Some(0)];
        assert_eq!(lower_hull(&v), [0, 4]);
    }
}
