use gavt_core::arith::nt::{euler_phi, mult_order, prime_power};
use gavt_core::arith::{Rat, RatPoly};
use gavt_core::weil::{end_algebra, is_weil_poly, split_minimal};
use gavt_core::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn prime_power_q() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49])
}

/// Degree-two and degree-four inputs, about half of them Weil polynomials.
fn weil_input() -> impl Strategy<Value = (RatPoly, u64)> {
    prime_power_q().prop_flat_map(|q| {
        let qi = q as i64;
        let b = 2 * (gavt_core::arith::nt::isqrt(q) as i64) + 3;
        prop_oneof![
            (-b..=b).prop_map(move |a| (RatPoly::from_ints(&[qi, a, 1]), q)),
            (-2 * b..=2 * b, -3 * qi..=6 * qi).prop_map(move |(a1, a2)| (RatPoly::from_ints(&[qi * qi, qi * a1, a2, a1, 1]), q)),
            prop::collection::vec(-40i64..=40, 4).prop_map(move |mut c| {
                c.push(1);
                (RatPoly::from_ints(&c), q)
            }),
        ]
    })
}

fn invariant_sum(d: &gavt_core::weil::EndAlgDescriptor) -> Rat {
    d.invariants.iter().fold(Rat::zero(), |acc, v| acc + v.value.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weil_symmetric_under_negation((f, q) in weil_input()) {
        prop_assert_eq!(is_weil_poly(&f, q).unwrap(), is_weil_poly(&f.negate_var(), q).unwrap());
    }

    #[test]
    fn descriptor_invariants((f, q) in weil_input()) {
        if !is_weil_poly(&f, q).unwrap() {
            return Ok(());
        }
        match end_algebra(&f, q) {
            Ok(d) => {
                prop_assert!(invariant_sum(&d).is_integer());
                prop_assert_eq!(d.d * d.e, 2 * d.g);
                prop_assert_eq!(d.dim_q, d.d * d.d * d.e);
                prop_assert!(d.invariants.iter().all(|v| v.value >= Rat::zero() && v.value < Rat::from_integer(1.into())));
                prop_assert_eq!(split_minimal(&f).unwrap().0, d.h);
            }
            Err(e) => prop_assert!(matches!(e, Error::NotElementary), "{}", e),
        }
    }

    #[test]
    fn elliptic_descriptors(q in prime_power_q(), beta in -14i64..=14) {
        if (beta * beta) as u64 > 4 * q {
            return Ok(());
        }
        let f = RatPoly::from_ints(&[q as i64, -beta, 1]);
        prop_assert!(is_weil_poly(&f, q).unwrap());
        if let Ok(d) = end_algebra(&f, q) {
            prop_assert!(invariant_sum(&d).is_integer());
            prop_assert_eq!(d.d * d.e, 2 * d.g);
        }
    }

    #[test]
    fn mult_order_matches_brute_force(m in 2u64..=100, r in 1u64..100) {
        let r = r % m;
        prop_assume!(num_integer::gcd(r, m) == 1);
        let mut x = 1u64;
        let mut k = 0;
        loop {
            x = x * r % m;
            k += 1;
            if x == 1 {
                break;
            }
        }
        let n = mult_order(r as i64, m).unwrap();
        prop_assert_eq!(n, k);
        prop_assert_eq!(euler_phi(m) % n, 0);
    }

    #[test]
    fn prime_powers_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), a in 1u32..6) {
        prop_assert_eq!(prime_power(p.pow(a)).unwrap(), (p, a));
    }
}
