//! The acceptance criteria, runnable from `gavt selftest` and from the
//! `acceptance` test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gavt_core::amitsur::{first_condition_groups, second_condition_groups, cubic_field_candidates};
use gavt_core::arith::nt::{isqrt, mult_order};
use gavt_core::arith::{Rat, RatPoly};
use gavt_core::classify::{Classifier, Shape};
use gavt_core::gl3::{
    allowed_exponents, dihedral_gl3, enveloping_q_dimension, f60_gens, gl3_from_sl3, is_irreducible_3dim,
    maximal_gl3_list, signed_permutation_gens, BaseField,
};
use gavt_core::quat::verify_containments;
use gavt_core::weil::{end_algebra, is_weil_poly, EndAlgDescriptor, PlaceKind};
use gavt_core::Result;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub budget_millis: u128,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {}: {} ({} ms, budget {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.millis,
            self.budget_millis
        )
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<(bool, String)>,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "metacyclic sweep", budget: Duration::from_secs(1), run: metacyclic_sweep },
    Criterion { id: 2, name: "cubic-field candidates", budget: Duration::from_secs(1), run: cubic_candidates },
    Criterion { id: 3, name: "witness polynomials", budget: Duration::from_secs(5), run: witness_polynomials },
    Criterion { id: 4, name: "GL3 exponents and maximal lists", budget: Duration::from_secs(1), run: gl3_lists },
    Criterion { id: 5, name: "character computations", budget: Duration::from_secs(10), run: characters },
    Criterion { id: 6, name: "containment suite", budget: Duration::from_secs(60), run: containments },
    Criterion { id: 7, name: "classification", budget: Duration::from_secs(30), run: classification },
    Criterion { id: 8, name: "property suites", budget: Duration::from_secs(60), run: properties },
];

pub fn criterion_ids() -> Vec<u32> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_one(id: u32) -> Option<Outcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let res = (c.run)();
    let elapsed = start.elapsed();
    let (ok, detail) = match res {
        Ok(r) => r,
        Err(e) => (false, format!("{}: {e}", e.name())),
    };
    let in_time = elapsed <= c.budget;
    let detail = if ok && !in_time { format!("{detail}; over budget") } else { detail };
    Some(Outcome {
        id: c.id,
        name: c.name,
        passed: ok && in_time,
        detail,
        millis: elapsed.as_millis(),
        budget_millis: c.budget.as_millis(),
    })
}

pub fn run_all() -> Vec<Outcome> {
    criterion_ids().into_iter().filter_map(run_one).collect()
}

fn labels(v: Vec<(u64, String)>) -> BTreeSet<String> {
    v.into_iter().map(|(_, l)| l).collect()
}

fn strs(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn metacyclic_sweep() -> Result<(bool, String)> {
    let a = labels(first_condition_groups());
    let b = labels(second_condition_groups());
    let ok = a == strs(&["C4", "Dic12", "Dic28", "Dic36"]) && b == strs(&["Q8"]);
    Ok((ok, format!("first condition {a:?}, second condition {b:?}")))
}

fn cubic_candidates() -> Result<(bool, String)> {
    let r = cubic_field_candidates();
    let got = r.labels();
    let want = strs(&["C2", "C4", "C6", "C14", "C18", "Q8", "Dic12", "Dic28", "Dic36", "T*"]);
    let non_max: Vec<&str> = r.groups.iter().filter(|c| !c.maximal).map(|c| c.label.as_str()).collect();
    let absent = ["O*", "I*"].iter().all(|g| !got.contains(*g));
    let ok = got == want && non_max == ["Q8"] && absent;
    Ok((ok, format!("{} groups, non-maximal {non_max:?}, O*/I* absent: {absent}", got.len())))
}

fn witness_polynomials() -> Result<(bool, String)> {
    let report = Classifier::builtin().verify_witnesses();
    let bad = report.mismatches().len();
    let half = Rat::new(1.into(), 2.into());
    let mut spot = true;
    for (h, q) in [("t^2-2", 2u64), ("t^2-3", 3), ("t^2-5", 5)] {
        let d = end_algebra(&RatPoly::parse(h)?, q)?;
        spot &= d.d == 2 && d.values(PlaceKind::Real) == [half.clone(), half.clone()];
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let d = end_algebra(&RatPoly::from_ints(&[-(p as i64), 1]), p * p)?;
        spot &= d.e == 1 && d.d == 2 && d.values(PlaceKind::AboveP) == [half.clone()];
    }
    let ok = report.ok() && spot;
    Ok((ok, format!("{} rows checked, {bad} mismatches, index-two spot checks {spot}", report.checks.len())))
}

fn gl3_lists() -> Result<(bool, String)> {
    let base = BTreeSet::from([3u64, 4, 6]);
    let mut ok = true;
    let mut extra = Vec::new();
    for d in [1u64, 2, 3, 5, 6, 7, 10, 13] {
        let k = BaseField::new(d)?;
        let e = allowed_exponents(&k);
        let beyond: Vec<u64> = e.difference(&base).copied().collect();
        let want: Vec<u64> = match d {
            2 => vec![8],
            3 => vec![12],
            5 => vec![5, 10],
            _ => vec![],
        };
        ok &= e.is_superset(&base) && beyond == want;
        if !beyond.is_empty() {
            extra.push(format!("d={d}: {beyond:?}"));
        }
        let list = maximal_gl3_list(&k)?;
        let alt = list.iter().any(|m| m.label == "Alt5×C2");
        let shapes = list
            .iter()
            .all(|m| m.label == "C2≀Sym3" || m.label == "Alt5×C2" || (m.label.starts_with('D') && m.label.ends_with("×C2")));
        ok &= shapes && alt == (d == 5) && list[0].label == "C2≀Sym3" && list[0].contained_in.is_none();
    }
    Ok((ok, format!("admissions {}", extra.join(", "))))
}

fn characters() -> Result<(bool, String)> {
    let wreath = is_irreducible_3dim(&signed_permutation_gens())?;
    let f60 = is_irreducible_3dim(&gl3_from_sl3(&f60_gens()))?;
    let mut dihedral_reducible = true;
    let mut dims_ok = true;
    for n in [4u64, 6, 8, 10, 12] {
        dihedral_reducible &= !is_irreducible_3dim(&dihedral_gl3(n))?;
        let deg = gavt_core::arith::nt::euler_phi(n) as usize / 2;
        dims_ok &= enveloping_q_dimension(&dihedral_gl3(n))? == 4 * deg + 1;
    }
    let w = enveloping_q_dimension(&signed_permutation_gens())?;
    let f = enveloping_q_dimension(&gl3_from_sl3(&f60_gens()))?;
    let ok = wreath && f60 && dihedral_reducible && dims_ok && w == 9 && f == 18;
    Ok((
        ok,
        format!(
            "irreducible: wreath {wreath}, F60 {f60}; dihedral reducible {dihedral_reducible}; envelopes {w}, {f}, 4[F:Q]+1 {dims_ok}"
        ),
    ))
}

fn containments() -> Result<(bool, String)> {
    let report = verify_containments();
    let negative = report
        .checks
        .iter()
        .find(|c| c.sub == "Dic28" && c.sup == "±L2(7).2")
        .is_some_and(|c| c.holds == Some(false));
    let ok = report.ok() && negative;
    Ok((ok, format!("{} checks, {} failures, Dic28 refuted {negative}", report.checks.len(), report.failures().len())))
}

fn classification() -> Result<(bool, String)> {
    let c = Classifier::builtin();
    let mut ok = true;
    let mut sizes = Vec::new();
    for shape in Shape::ALL {
        let u: BTreeSet<String> = c.union_over_fields(shape)?.groups.into_iter().collect();
        let g: BTreeSet<String> = c.golden_list(shape)?.groups.into_iter().collect();
        ok &= u == g;
        sizes.push(format!("{}={}", shape.tag(), u.len()));
    }
    let mut audits = Vec::new();
    for shape in [Shape::SurfaceElliptic, Shape::ThreeElliptic, Shape::SquareElliptic] {
        let a = c.exclusion_audit(shape)?;
        audits.push((a.total, a.excluded));
    }
    ok &= audits == [(45, 13), (35, 9), (99, 19)];
    Ok((ok, format!("{}; audits {audits:?}", sizes.join(" "))))
}

fn random_weil_input(rng: &mut ChaCha8Rng) -> (RatPoly, u64) {
    let q = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25][rng.gen_range(0..11)];
    let qi = q as i64;
    let b = 2 * isqrt(q) as i64 + 3;
    if rng.gen_bool(0.5) {
        let c0 = if rng.gen_bool(0.8) { qi } else { rng.gen_range(1..=2 * qi) };
        (RatPoly::from_ints(&[c0, rng.gen_range(-b..=b), 1]), q)
    } else if rng.gen_bool(0.6) {
        let a1 = rng.gen_range(-2 * b..=2 * b);
        let a2 = rng.gen_range(-3 * qi..=6 * qi);
        (RatPoly::from_ints(&[qi * qi, qi * a1, a2, a1, 1]), q)
    } else {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-30..=30)).chain([1]).collect();
        (RatPoly::from_ints(&c), q)
    }
}

fn descriptor_pool() -> Result<Vec<EndAlgDescriptor>> {
    let c = Classifier::builtin();
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
        out.extend(c.elliptic_classes(q)?.iter().map(|e| e.desc.clone()));
        out.extend(c.supersingular_classes(q)?.into_iter().map(|e| e.desc));
    }
    let facts = c.facts();
    for (h, q) in facts.simple.iter().map(|s| (&s.h, s.q)).chain(facts.surface.iter().map(|s| (&s.h, s.q))) {
        out.push(end_algebra(&RatPoly::parse(h)?, q)?);
    }
    Ok(out)
}

fn properties() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut sym_ok, mut valid) = (true, 0);
    for _ in 0..100 {
        let (f, q) = random_weil_input(&mut rng);
        let a = is_weil_poly(&f, q)?;
        sym_ok &= a == is_weil_poly(&f.negate_var(), q)?;
        valid += a as usize;
    }
    let pool = descriptor_pool()?;
    let inv_ok = pool.iter().all(|d| {
        let s: Rat = d.invariants.iter().fold(Rat::zero(), |acc, v| acc + v.value.clone());
        s.is_integer()
    });
    let de_ok = pool.iter().all(|d| d.d * d.e == 2 * d.g);
    let mut order_ok = true;
    for m in 2..=100u64 {
        for r in 1..m {
            if r.gcd(&m) != 1 {
                continue;
            }
            let brute = (1..=m).scan(1u64, |x, k| {
                *x = *x * r % m;
                Some((k, *x))
            });
            let brute = brute.filter(|&(_, x)| x == 1).map(|(k, _)| k).next();
            order_ok &= Some(mult_order(r as i64, m)?) == brute;
        }
    }
    let ok = sym_ok && inv_ok && de_ok && order_ok && valid > 10 && valid < 90;
    Ok((
        ok,
        format!(
            "t->-t symmetry {sym_ok} ({valid}/100 valid); invariant sums {inv_ok} and d·e=2g {de_ok} on {} descriptors; mult_order {order_ok}",
            pool.len()
        ),
    ))
}
