use std::collections::BTreeSet;

use gavt_core::arith::cyclo::CycloNum;
use gavt_core::arith::fp::FpPoly;
use gavt_core::arith::nt::{euler_phi, is_prime};
use gavt_core::arith::numfield::roots_of_unity_order;
use gavt_core::arith::RatPoly;
use gavt_core::classify::*;
use gavt_core::groups::catalog::Catalog;
use gavt_core::groups::search::embeds_bounded;
use gavt_core::weil::{end_algebra, is_weil_poly};
use gavt_core::Error;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn set(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

#[test]
fn unions_equal_golden_lists() {
    let c = Classifier::builtin();
    for shape in Shape::ALL {
        let u = c.union_over_fields(shape).unwrap();
        let g = c.golden_list(shape).unwrap();
        assert_eq!(set(&u.groups), set(&g.groups), "{shape}");
        assert_eq!(u.excluded, g.excluded, "{shape}");
    }
}

#[test]
fn list_sizes() {
    let c = Classifier::builtin();
    let sizes: Vec<usize> = [Shape::SurfaceElliptic, Shape::ThreeElliptic, Shape::SquareElliptic]
        .iter()
        .map(|&s| c.union_over_fields(s).unwrap().groups.len())
        .collect();
    assert_eq!(sizes, [32, 26, 80]);
}

#[test]
fn audits() {
    let c = Classifier::builtin();
    let got: Vec<(usize, usize)> = [Shape::SurfaceElliptic, Shape::ThreeElliptic, Shape::SquareElliptic]
        .iter()
        .map(|&s| {
            let a = c.exclusion_audit(s).unwrap();
            assert_eq!(a.total - a.excluded, c.union_over_fields(s).unwrap().groups.len());
            (a.total, a.excluded)
        })
        .collect();
    assert_eq!(got, [(45, 13), (35, 9), (99, 19)]);
    assert!(matches!(c.exclusion_audit(Shape::Simple3), Err(Error::Invalid(_))));
}

#[test]
fn audit_reason_tags() {
    let c = Classifier::builtin();
    let a = c.exclusion_audit(Shape::SurfaceElliptic).unwrap();
    let tag = |g: &str| a.reasons.iter().find(|r| r.group == c.canonical(g).unwrap()).unwrap().tag.clone();
    assert_eq!(tag("Dic24×Dic12"), "parity-clash");
    assert_eq!(tag("I*×Dic12"), "characteristic-clash");
    assert_eq!(tag("O*×Dic12"), "characteristic-clash");
    assert_eq!(tag("T*×T*"), UNATTRIBUTED);

    let a = c.exclusion_audit(Shape::ThreeElliptic).unwrap();
    let tags: Vec<&str> = a.reasons.iter().map(|r| r.tag.as_str()).collect();
    assert_eq!(tags.iter().filter(|&&t| t == "characteristic-clash").count(), 5);
    assert_eq!(tags.iter().filter(|&&t| t == "forced-isogeny").count(), 2);

    let a = c.exclusion_audit(Shape::SquareElliptic).unwrap();
    assert_eq!(a.reasons.iter().filter(|r| r.tag == "characteristic-clash").count(), 3);
}

#[test]
fn field_examples() {
    let c = Classifier::builtin();
    let has = |shape, p, a, g: &str| c.combine(shape, p, a).unwrap().contains(&c.canonical(g).unwrap());
    assert!(has(Shape::SurfaceElliptic, 5, 1, "I*×C2"));
    assert!(has(Shape::ThreeElliptic, 3, 1, "C2×C2×C2"));
    assert!(has(Shape::SquareElliptic, 2, 2, "D4×C2"));
    assert!(has(Shape::SquareElliptic, 2, 2, "D6×C2"));
    assert!(has(Shape::SupersingularCube, 7, 2, "±L2(7).2"));
    assert!(has(Shape::OrdinaryCube, 2, 2, "D6×C2"));
}

#[test]
fn combine_errors() {
    let c = Classifier::builtin();
    assert!(matches!(c.combine(Shape::Simple3, 11, 1), Err(Error::UnknownWitness(_))));
    assert!(matches!(c.combine(Shape::SupersingularCube, 7, 1), Err(Error::UnknownWitness(_))));
    assert!(c.combine(Shape::ThreeElliptic, 6, 1).is_err());
}

#[test]
fn combine_is_deterministic() {
    let c = Classifier::builtin();
    let a = c.combine(Shape::SquareElliptic, 5, 1).unwrap();
    let b = Classifier::builtin().combine(Shape::SquareElliptic, 5, 1).unwrap();
    assert_eq!(a, b);
    let cat = Catalog::builtin();
    let orders: Vec<u64> = a.iter().map(|g| cat.parse(g).unwrap().order()).collect();
    assert!(orders.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn witnesses_verify() {
    let r = Classifier::builtin().verify_witnesses();
    let bad: Vec<_> = r.mismatches().iter().map(|m| (m.source.clone(), m.problem.clone())).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(r.checks.len() > 100);
}

#[test]
fn witness_descriptors() {
    let f = RatPoly::parse("t^4-9t^2+81").unwrap();
    let d = end_algebra(&f, 9).unwrap();
    assert!(d.commutative && d.e == 4);
    assert!("Q(ζ12)".parse::<EndLabel>().unwrap().matches(&d));
    assert!(!"Q(ζ8)".parse::<EndLabel>().unwrap().matches(&d));

    let d = end_algebra(&RatPoly::parse("t^2-3").unwrap(), 3).unwrap();
    assert!("D_{3,∞}⊗Q(√3)".parse::<EndLabel>().unwrap().matches(&d));

    let d = end_algebra(&RatPoly::parse("t^4-2t^3+4t^2-8t+16").unwrap(), 4).unwrap();
    assert!("Q(ζ10)".parse::<EndLabel>().unwrap().matches(&d));

    let d = end_algebra(&RatPoly::parse("t-7").unwrap(), 49).unwrap();
    assert!("D_{7,∞}".parse::<EndLabel>().unwrap().matches(&d));
    assert!(!"D_{5,∞}".parse::<EndLabel>().unwrap().matches(&d));
}

#[test]
fn elliptic_class_counts() {
    let c = Classifier::builtin();
    // isogeny classes of elliptic curves over F_2 and F_4
    assert_eq!(c.elliptic_classes(2).unwrap().len(), 5);
    let f4 = c.elliptic_classes(4).unwrap();
    assert_eq!(f4.len(), 9);
    let ss: Vec<_> = f4.iter().filter(|e| !e.ordinary).collect();
    assert_eq!(ss.len(), 5);
    assert!(ss.iter().any(|e| e.end == EndLabel::Quaternion(2) && e.groups == ["T*"]));
}

#[test]
fn ordinary_cube_groups_come_from_keyed_data() {
    let c = Classifier::builtin();
    let facts = c.facts();
    for &q in facts.fields(Shape::OrdinaryCube) {
        let comb = c.combine_detailed(Shape::OrdinaryCube, q).unwrap();
        for r in comb.realizations {
            let end: EndLabel = r.factors[0].end.parse().unwrap();
            let keyed = facts.cube.iter().find(|k| k.end == end).unwrap();
            let labels: Vec<String> = keyed.groups.iter().map(|g| c.canonical(g).unwrap()).collect();
            assert!(labels.contains(&r.group), "{} over F_{q}", r.group);
        }
    }
}

/// Within one choice of isogeny classes, no realized product embeds in
/// another as a whole group (checked wherever the larger one is small
/// enough to search).
#[test]
fn realized_groups_are_maximal() {
    let c = Classifier::builtin();
    let cat = Catalog::builtin();
    let mut checked = 0;
    for shape in Shape::ALL.into_iter().filter(|s| s.is_product()) {
        for &q in c.facts().fields(shape) {
            let comb = c.combine_detailed(shape, q).unwrap();
            let rs = &comb.realizations;
            for a in rs {
                for b in rs {
                    if a.group == b.group || a.factors != b.factors {
                        continue;
                    }
                    let (oa, ob) = (cat.parse(&a.group).unwrap().order(), cat.parse(&b.group).unwrap().order());
                    if ob % oa != 0 || ob > 5000 {
                        continue;
                    }
                    let (ga, gb) = (cat.build(&a.group).unwrap(), cat.build(&b.group).unwrap());
                    assert!(!embeds_bounded(&ga, &gb, 5000).unwrap(), "{} < {} over F_{q}", a.group, b.group);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

/// Primes up to `bound` modulo which `h` splits into distinct linear factors.
fn split_primes(h: &RatPoly, bound: u64) -> Vec<u64> {
    let z = h.to_ints().unwrap();
    (3..bound)
        .filter(|&l| is_prime(l))
        .filter(|&l| {
            let li = num_bigint::BigInt::from(l);
            let c: Vec<u64> = z.iter().map(|x| ((x % &li + &li) % &li).to_u64().unwrap()).collect();
            let f = FpPoly::new(l, c);
            f.degree() == h.degree() && f.is_squarefree() && f.factor().iter().all(|(g, _)| g.degree() == 1)
        })
        .collect()
}

/// Frobenius-density oracle for the roots of unity of `Q(π)`: a field
/// containing `ζ_n` only splits completely at primes `≡ 1 mod n`.
fn mu_by_splitting(h: &RatPoly) -> u64 {
    let primes = split_primes(h, 6000);
    assert!(primes.len() >= 5);
    let e = h.degree() as u64;
    (1..=4 * e * e + 2)
        .filter(|&n| n % 2 == 0 && e.is_multiple_of(euler_phi(n)))
        .filter(|&n| primes.iter().all(|l| l % n == 1))
        .max()
        .unwrap()
}

const SIMPLE: [(&str, u64, u64); 5] = [
    ("t^6-2t^5+t^4+t^3+2t^2-8t+8", 2, 2),
    ("t^6-2t^5-2t^3-50t+125", 5, 4),
    ("t^6-3t^5+5t^3-147t+343", 7, 6),
    ("t^6+4t^5+9t^4+15t^3+18t^2+16t+8", 2, 14),
    ("t^6-9t^3+27", 3, 18),
];

#[test]
fn simple_witnesses_against_splitting_oracle() {
    for (h, q, mu) in SIMPLE {
        let f = RatPoly::parse(h).unwrap();
        assert!(is_weil_poly(&f, q).unwrap(), "{h}");
        let d = end_algebra(&f, q).unwrap();
        assert_eq!((d.e, d.d, d.g, d.commutative), (6, 1, 3, true), "{h}");
        assert_eq!(mu_by_splitting(&f), mu, "{h}");
    }
}

#[test]
fn simple_witnesses_frozen() {
    let c = Classifier::builtin();
    for (h, q, mu) in SIMPLE {
        assert_eq!(roots_of_unity_order(&RatPoly::parse(h).unwrap()), mu);
        let fact = c.facts().simple.iter().find(|s| s.h == h).unwrap();
        assert_eq!((fact.q, fact.group.clone()), (q, format!("C{mu}")));
    }
    let got = c.combine(Shape::Simple3, 2, 1).unwrap();
    assert_eq!(got, ["C2", "C14"]);
}

fn horner(h: &RatPoly, x: &CycloNum) -> CycloNum {
    let n = x.conductor();
    let mut acc = CycloNum::zero(n);
    for c in h.coeffs().iter().rev() {
        acc = &(&acc * x) + &CycloNum::from_rat(n, c.clone());
    }
    acc
}

/// The two sextics with cyclotomic centers, as explicit Weil numbers.
#[test]
fn cyclotomic_simple_witnesses_explicit() {
    let z = |k| CycloNum::zeta(7, k);
    let mut g = CycloNum::zero(7);
    for k in [1, 2, 4] {
        g = &g + &z(k);
    }
    for k in [3, 5, 6] {
        g = &g - &z(k);
    }
    assert_eq!((&g * &g).as_rat(), Some(gavt_core::arith::rat(-7)));
    let half = CycloNum::from_rat(7, gavt_core::arith::ratio(1, 2));
    let beta = &(&CycloNum::one(7) + &g) * &half;
    let alpha = (0..7).map(|k| &z(k) * &beta).find(|a| horner(&RatPoly::parse(SIMPLE[3].0).unwrap(), a).is_zero());
    let alpha = alpha.expect("a root in Q(ζ7)");
    assert_eq!((&alpha * &alpha.conj()).as_rat(), Some(gavt_core::arith::rat(2)));

    let s3 = &CycloNum::zeta(9, 3) - &CycloNum::zeta(9, 6);
    let alpha = &s3 * &CycloNum::zeta(9, 1);
    assert!(horner(&RatPoly::parse(SIMPLE[4].0).unwrap(), &alpha).is_zero());
    assert_eq!((&alpha * &alpha.conj()).as_rat(), Some(gavt_core::arith::rat(3)));
}

#[test]
fn facts_round_trip() {
    let f = Facts::builtin();
    let json = serde_json::to_string(&f).unwrap();
    let g = Facts::from_json(&json).unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap(), json);
    assert!(Facts::from_json("{}").is_err());
}

proptest! {
    #[test]
    fn shape_tags_parse(i in 0usize..6) {
        let s = Shape::ALL[i];
        prop_assert_eq!(s.tag().parse::<Shape>().unwrap(), s);
        prop_assert_eq!(s.tag().to_uppercase().parse::<Shape>().unwrap(), s);
    }

    #[test]
    fn elliptic_classes_are_weil(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), a in 1u32..3) {
        let q = p.pow(a);
        let c = Classifier::builtin();
        for e in c.elliptic_classes(q).unwrap().iter() {
            prop_assert!(is_weil_poly(&e.f, q).unwrap());
            prop_assert!(e.end.matches(&e.desc));
            prop_assert!(!e.groups.is_empty());
        }
    }

    #[test]
    fn end_labels_round_trip(d in 1u64..200, n in 3u64..40) {
        for l in [EndLabel::ImagQuadratic(d), EndLabel::Cyclotomic(n), EndLabel::Cm(n as u32)] {
            prop_assert_eq!(l.to_string().parse::<EndLabel>().unwrap(), l);
        }
    }
}
