use gavt_core::arith::cyclo::{CycMat, CycloNum};
use gavt_core::arith::rat;
use gavt_core::groups::catalog::Catalog;
use gavt_core::groups::chars::{char_inner_product, char_pairing, dihedral_char_table, mat_closure};
use gavt_core::groups::{build, embeds, embeds_with_hint, is_isomorphic, FinGroup};
use gavt_core::Error;
use proptest::prelude::*;

#[test]
fn catalog_orders_match() {
    let cat = Catalog::builtin();
    for e in cat.entries() {
        if e.order > 20_000 {
            continue;
        }
        let g = cat.build(&e.label).unwrap();
        assert_eq!(g.order() as u64, e.order, "{}", e.label);
    }
}

#[test]
fn build_examples() {
    assert_eq!(build("Dic12").unwrap().order(), 12);
    assert_eq!(build("C2≀Sym3").unwrap().order(), 48);
    assert_eq!(build("SL2(F3)≀Sym3").unwrap().order(), 82944);
    assert_eq!(build("O*").unwrap().order(), 48);
    assert_eq!(build("I*").unwrap().order(), 120);
    assert!(matches!(build("Nope"), Err(Error::UnknownLabel(_))));
}

#[test]
fn isomorphism_examples() {
    let t = build("T*").unwrap();
    let sl = Catalog::builtin().build_label(&gavt_core::groups::catalog::Label {
        atoms: vec![gavt_core::groups::catalog::Atom::Named("T*".into(), 24)],
    });
    assert!(is_isomorphic(&t, &sl.unwrap()).unwrap());
    assert!(!is_isomorphic(&build("GL2(F3)").unwrap(), &build("O*").unwrap()).unwrap());
    assert!(is_isomorphic(&build("Sym4×C2").unwrap(), &build("C2≀Sym3").unwrap()).unwrap());
    assert!(is_isomorphic(&build("(C6×C6)⋊C2").unwrap(), &build("C6≀Sym2").unwrap()).unwrap());
    assert!(is_isomorphic(&build("G(3,2)").unwrap(), &build("Sym3").unwrap()).unwrap());
}

#[test]
fn embedding_examples() {
    assert!(embeds(&build("Q8").unwrap(), &build("T*").unwrap()).unwrap());
    assert!(embeds(&build("Dic36").unwrap(), &build("Dic12≀Sym3").unwrap()).unwrap());
    assert!(!embeds(&build("Dic28").unwrap(), &build("±L2(7).2").unwrap()).unwrap());
    assert!(embeds(&build("D4×C2").unwrap(), &build("C2≀Sym3").unwrap()).unwrap());
    assert!(!embeds(&build("C5").unwrap(), &build("T*").unwrap()).unwrap());
}

#[test]
fn hint_into_wreath_base() {
    let t = build("T*").unwrap();
    let w = build("T*≀Sym3").unwrap();
    // T* acts on 8 points; the wreath acts on three blocks of 8.
    let img: Vec<u32> = t
        .gens()
        .iter()
        .map(|&g| {
            let mut p: Vec<u16> = (0..24).collect();
            p[..8].copy_from_slice(t.elem(g));
            w.index_of(&p).unwrap()
        })
        .collect();
    assert!(embeds_with_hint(&t, &w, &img).unwrap());
}

#[test]
fn large_search_needs_hint() {
    let g = build("T*").unwrap();
    let h = build("±U3(3)×C6×C2").unwrap();
    assert_eq!(h.order(), 145152);
    assert!(matches!(embeds(&g, &h), Err(Error::TooLarge(100_000))));
}

#[test]
fn dihedral_examples() {
    let t4 = dihedral_char_table(4).unwrap();
    assert_eq!(t4.chars.iter().filter(|c| c.degree == 1).count(), 4);
    assert_eq!(t4.chars.iter().filter(|c| c.degree == 2).count(), 1);
    let t6 = dihedral_char_table(6).unwrap();
    assert_eq!(t6.chars.iter().filter(|c| c.degree == 2).count(), 2);
    for c in &t6.chars {
        let v = gavt_core::groups::chars::pair_values(&c.values, &c.values).unwrap();
        assert_eq!(v, rat(1));
    }
}

const SAMPLE: &[&str] = &[
    "C2", "C4", "C6", "C12", "C2×C6", "C3×C4", "D4", "D6", "D3×C2", "Q8", "Dic12", "Dic24", "T*", "O*",
    "GL2(F3)", "Sym4", "Sym4×C2", "C2≀Sym3", "Alt5", "I*", "C12⋊C2", "Dic12⋊C6", "(C6×C6)⋊C2", "C6≀Sym2",
    "T*⋊C4", "T*×C3", "D6×C2", "Sym3", "C2×C2", "D2",
];

fn sample_groups() -> Vec<FinGroup> {
    SAMPLE.iter().map(|s| build(s).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isomorphism_is_an_equivalence(i in 0..SAMPLE.len(), j in 0..SAMPLE.len(), k in 0..SAMPLE.len()) {
        let gs = sample_groups();
        let (a, b, c) = (&gs[i], &gs[j], &gs[k]);
        prop_assert!(is_isomorphic(a, a).unwrap());
        let ab = is_isomorphic(a, b).unwrap();
        prop_assert_eq!(ab, is_isomorphic(b, a).unwrap());
        if ab && is_isomorphic(b, c).unwrap() {
            prop_assert!(is_isomorphic(a, c).unwrap());
        }
    }

    #[test]
    fn embedding_is_a_preorder(i in 0..SAMPLE.len(), j in 0..SAMPLE.len(), k in 0..SAMPLE.len()) {
        let gs = sample_groups();
        let (a, b, c) = (&gs[i], &gs[j], &gs[k]);
        prop_assert!(embeds(a, a).unwrap());
        let ab = embeds(a, b).unwrap();
        if ab {
            prop_assert_eq!(b.order() % a.order(), 0);
            if embeds(b, c).unwrap() {
                prop_assert!(embeds(a, c).unwrap());
            }
        }
    }

    #[test]
    fn cached_invariants_recompute(i in 0..SAMPLE.len()) {
        let g = build(SAMPLE[i]).unwrap();
        let f1 = g.fingerprint();
        let h = FinGroup::generate(g.degree(), g.gen_perms()).unwrap();
        prop_assert_eq!(f1, h.fingerprint());
        prop_assert_eq!(g.order_histogram().values().sum::<usize>(), g.order());
    }

    #[test]
    fn pairing_is_additive(n1 in prop::sample::select(vec![2u64, 3, 4, 6]), k1 in 0i64..6, k2 in 0i64..6) {
        // two characters of C_n given by z -> ζ^k1, z -> ζ^k2
        let a = CycMat::diag(vec![CycloNum::zeta(n1, k1)]);
        let b = CycMat::diag(vec![CycloNum::zeta(n1, k2)]);
        let gen = CycMat::diag(vec![CycloNum::zeta(n1, 1)]);
        let elems = mat_closure(&[gen], 100).unwrap();
        let pow = |m: &CycMat, e: usize| (0..e).fold(CycMat::identity(1, n1), |acc, _| acc.mul(m));
        let exps: Vec<usize> = (0..elems.len()).collect();
        let ra: Vec<CycMat> = exps.iter().map(|&e| pow(&a, e)).collect();
        let rb: Vec<CycMat> = exps.iter().map(|&e| pow(&b, e)).collect();
        let sum: Vec<CycMat> = ra.iter().zip(&rb).map(|(x, y)| x.direct_sum(y)).collect();
        let lhs = char_pairing(&sum, &sum).unwrap();
        let rhs = char_pairing(&ra, &ra).unwrap() + char_pairing(&rb, &rb).unwrap()
            + char_pairing(&ra, &rb).unwrap() * rat(2);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(char_inner_product(&sum).is_ok(), true);
    }
}
