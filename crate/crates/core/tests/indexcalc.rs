use hyperscat_core::indexcalc::*;
use hyperscat_core::Error;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn ctx() -> IndexCtx {
    IndexCtx::new(C64::new(0.6, 0.7))
}

fn term(p: i64, q: u32, l: u32) -> IndexTerm {
    IndexTerm::new(Exponent::new(p, q), l)
}

fn arb_term() -> impl Strategy<Value = IndexTerm> {
    (-3i64..4, 0u32..3, 0u32..3).prop_map(|(p, q, l)| term(p, q, l))
}

fn arb_set() -> impl Strategy<Value = IndexSet> {
    prop_oneof![
        1 => Just(IndexSet::infinity()),
        8 => prop::collection::vec(arb_term(), 0..5).prop_map(IndexSet::exact),
    ]
}

fn arb_finite() -> impl Strategy<Value = IndexSet> {
    prop::collection::vec(arb_term(), 0..5).prop_map(IndexSet::exact)
}

/// Sets whose exponents pairwise avoid integer differences: at most one term per ζ-multiplicity.
fn arb_separated() -> impl Strategy<Value = IndexSet> {
    prop::collection::btree_map(0u32..4, (-3i64..4, 0u32..2), 0..4)
        .prop_map(|m| IndexSet::exact(m.into_iter().map(|(q, (p, l))| term(p, q, l))))
}

#[test]
fn elementary_laws() {
    let c = ctx();
    let s = sum(&c, &IndexSet::exact([term(1, 0, 0)]), &IndexSet::exact([term(2, 0, 3)]));
    assert_eq!(s, IndexSet::exact([term(3, 0, 3)]));
    let u = ext_union(&c, &IndexSet::exact([term(1, 0, 0)]), &IndexSet::exact([term(2, 0, 1)])).unwrap();
    assert_eq!(u, IndexSet::exact([term(1, 0, 0), term(2, 0, 2)]));
    let z = IndexSet::single(Exponent::new(0, 1));
    assert!(sum(&c, &IndexSet::infinity(), &z).is_infinity());
    assert_eq!(ext_union(&c, &IndexSet::infinity(), &z).unwrap(), z);
}

#[test]
fn neumann_j6_report_is_deterministic() {
    let c = IndexCtx::generic(C64::new(0.6, 0.7));
    let a = neumann_envelope(&c, &neumann_base(), 6, 6.6, 1, NeumannSemantics::default()).unwrap();
    let b = neumann_envelope(&c, &neumann_base(), 6, 6.6, 1, NeumannSemantics::default()).unwrap();
    assert_eq!(a.envelope, b.envelope);
    assert_eq!(a.violations, b.violations);
    for v in &a.violations {
        println!("{v}");
    }
    // the base itself is always contained, and the check only ever reports envelope terms
    for v in &a.violations {
        let face = match v.face {
            Face::Left => &a.envelope.left,
            Face::Right => &a.envelope.right,
            Face::Front => &a.envelope.front,
        };
        assert!(face.contains(&v.term));
    }
}

#[test]
fn neumann_literal_semantics_runs() {
    let c = IndexCtx::generic(C64::new(0.6, 0.7));
    let sem = NeumannSemantics { closure: false, across_powers: PowerUnion::Extended };
    let r = neumann_envelope(&c, &neumann_base(), 3, 4.6, 1, sem).unwrap();
    assert_eq!(r.powers.len(), 3);
    assert!(neumann_envelope(&c, &neumann_base(), 0, 4.6, 1, sem).is_err());
}

#[test]
fn hypothesis_error_carries_values() {
    let c = ctx();
    let f = parse_family(&c, "[z, 0, 0]").unwrap();
    match compose_families(&c, &f, &f, 1) {
        Err(Error::Hypothesis { left, right, n }) => {
            assert_eq!(left, 0.0);
            assert!((right - 0.6).abs() < 1e-15);
            assert_eq!(n, 1);
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn text_round_trip(s in arb_set(), m in prop::option::of(-2.0f64..6.0)) {
        let c = ctx();
        let s = match m { Some(m) => truncate(&c, &s, m), None => s };
        let text = s.to_string();
        prop_assert_eq!(parse_set(&c, &text).unwrap(), s);
    }

    #[test]
    fn family_round_trip(a in arb_set(), b in arb_set(), f in arb_set()) {
        let c = ctx();
        let fam = IndexFamily::new(a, b, f);
        prop_assert_eq!(parse_family(&c, &fam.to_string()).unwrap(), fam);
    }

    #[test]
    fn sum_commutative_associative(a in arb_finite(), b in arb_finite(), d in arb_finite()) {
        let c = ctx();
        prop_assert_eq!(sum(&c, &a, &b), sum(&c, &b, &a));
        prop_assert_eq!(sum(&c, &sum(&c, &a, &b), &d), sum(&c, &a, &sum(&c, &b, &d)));
    }

    #[test]
    fn ext_union_commutative(a in arb_set(), b in arb_set()) {
        let c = ctx();
        prop_assert_eq!(ext_union(&c, &a, &b).unwrap(), ext_union(&c, &b, &a).unwrap());
    }

    #[test]
    fn infinity_absorbing_and_neutral(a in arb_set()) {
        let c = ctx();
        prop_assert!(sum(&c, &IndexSet::infinity(), &a).is_infinity());
        prop_assert_eq!(ext_union(&c, &IndexSet::infinity(), &a).unwrap(), a.clone());
        prop_assert_eq!(ext_union(&c, &a, &IndexSet::infinity()).unwrap(), a);
    }

    #[test]
    fn separated_sets_unite_plainly(a in arb_separated(), b in arb_separated()) {
        let c = ctx();
        let separated = a.terms().all(|s| b.terms().all(|t| s.a.zeta != t.a.zeta));
        prop_assume!(separated);
        prop_assert_eq!(ext_union(&c, &a, &b).unwrap(), plain_union(&c, &a, &b));
    }

    #[test]
    fn separated_families_compose_without_bumps(
        e1 in arb_separated(), e3 in arb_separated(), f1 in arb_separated(), f2 in arb_separated()
    ) {
        // with ζ-multiplicities forced apart, no two exponents in any ∪̄ are integer-related
        let c = ctx();
        let shift = |s: &IndexSet, q: u32| IndexSet::exact(s.terms().map(|t| IndexTerm::new(Exponent::new(t.a.offset, t.a.zeta * 8 + q), t.log)));
        let (e1, e3, f1, f2) = (shift(&e1, 1), shift(&e3, 0), shift(&f1, 3), shift(&f2, 2));
        let e2 = IndexSet::single(Exponent::new(5, 0));
        let f3 = IndexSet::single(Exponent::constant(0));
        let e = IndexFamily::new(e1.clone(), e2.clone(), e3.clone());
        let f = IndexFamily::new(f1.clone(), f2.clone(), f3.clone());
        let r = compose_families(&c, &e, &f, 1).unwrap();
        prop_assert_eq!(r.left, plain_union(&c, &e1, &sum(&c, &f1, &e3)));
        prop_assert_eq!(r.right, plain_union(&c, &f2, &sum(&c, &e2, &f3)));
    }

    #[test]
    fn truncation_soundness(a in arb_finite(), b in arb_finite(), m1 in 0.0f64..3.0, dm in 0.0f64..3.0) {
        let c = ctx();
        let m2 = m1 + dm;
        let small = sum(&c, &truncate(&c, &a, m1), &truncate(&c, &b, m1));
        let large = sum(&c, &truncate(&c, &a, m2), &truncate(&c, &b, m2));
        for t in small.terms() {
            prop_assert!(large.contains(t));
        }
        let small = ext_union(&c, &truncate(&c, &a, m1), &truncate(&c, &b, m1)).unwrap();
        let large = ext_union(&c, &truncate(&c, &a, m2), &truncate(&c, &b, m2)).unwrap();
        for t in small.terms() {
            if c.re(t.a) < small.truncation() {
                prop_assert!(large.contains(t) || large.dominates(t));
            }
        }
    }
}

#[test]
fn composition_associativity_observed() {
    // not a claimed law: count how often the two bracketings agree on a fixed sample
    let c = ctx();
    let sets = ["{(z+1,0)}", "{(z+1,0),(z+2,1)}", "{(2,0)}", "{(z+1,1),(2z+1,0)}"];
    let mut agree = 0;
    let mut total = 0;
    for a in sets {
        for b in sets {
            let e = parse_family(&c, &format!("[{a},{b},0]")).unwrap();
            let f = parse_family(&c, &format!("[{b},{a},1]")).unwrap();
            let l = compose_families(&c, &compose_families(&c, &e, &f, 1).unwrap(), &e, 1).unwrap();
            let r = compose_families(&c, &e, &compose_families(&c, &f, &e, 1).unwrap(), 1).unwrap();
            total += 1;
            if l == r {
                agree += 1;
            }
        }
    }
    println!("associative on {agree} of {total} samples");
    assert_eq!(total, 16);
}
