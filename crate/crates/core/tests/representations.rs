use std::collections::HashSet;

use proptest::prelude::*;
use qualprob_core::report::{all_passed, find};
use qualprob_core::*;
use rand::Rng;
use testkit::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// A de Finetti-consistent strict order on `2^{w1..w5}` that admits no
/// additive representation, lowest event first (bitmask `i` ↔ `w(i+1)`).
/// Found by the flip search from the additive order of weights
/// `(12, 13, 17, 19, 22)`.
const NON_ADDITIVE: [u32; 32] = [
    0, 1, 2, 4, 3, 8, 16, 5, 9, 6, 10, 17, 18, 7, 12, 20, 11, 19, 24, 13, 14, 21, 25, 22, 26, 15,
    23, 28, 27, 29, 30, 31,
];

fn non_additive() -> StrictOrder {
    StrictOrder {
        width: 5,
        chain: NON_ADDITIVE.to_vec(),
    }
}

/// Sum of witness weights over an event given as a bitmask.
fn weight_of(witness: &NumericProbability, bits: u32) -> Rational {
    (0..witness.family().width())
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| {
            witness
                .value(Event::singleton(witness.family().width(), i))
                .unwrap()
                .clone()
        })
        .sum()
}

/// Recomputes event values from singleton values and checks the closure.
fn verify_witness(witness: &NumericProbability, r: &ComparativeRelation) {
    let closed = r.closed_pairs();
    for (a, b) in closed.strict {
        assert!(
            weight_of(witness, a.bits()) > weight_of(witness, b.bits()),
            "{a:?} {b:?}"
        );
    }
    for (a, b) in closed.equiv {
        assert_eq!(weight_of(witness, a.bits()), weight_of(witness, b.bits()));
    }
    assert_eq!(
        weight_of(witness, (1 << witness.family().width()) - 1),
        Rational::one()
    );
}

#[test]
fn frozen_order_is_consistent_but_not_representable() {
    let order = non_additive();
    assert!(order.is_additive_order());
    let r = order.relation();
    assert!(all_passed(&r.check_de_finetti()));
    assert!(has_cancellation(&order.differences(), 3));
    match decide_representability(&r) {
        Representability::NotRepresentable(Certificate::Infeasible(Some(slack))) => {
            assert!(!slack.is_positive())
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn flip_search_reproduces_the_frozen_order() {
    let (found, _) = search_non_additive(5, &[12, 13, 17, 19, 22], 1000).unwrap();
    assert_eq!(found, non_additive());
}

#[test]
fn additive_orders_have_no_cancellation() {
    for w in [
        [12, 13, 17, 19, 22],
        [1, 2, 4, 8, 16],
        [10, 21, 43, 87, 175],
    ] {
        let order = StrictOrder::from_weights(5, &w).unwrap();
        assert!(!has_cancellation(&order.differences(), 3));
        assert!(matches!(
            decide_representability(&order.relation()),
            Representability::Representable { .. }
        ));
    }
}

#[test]
fn every_complete_consistent_order_on_three_elements_is_representable() {
    let f = EventFamily::power_set_of_width(3).unwrap();
    let mut consistent = 0;
    for levels in all_weak_orders(3) {
        let r = relation_from_levels(&f, &levels);
        if !all_passed(&r.check_de_finetti()) {
            continue;
        }
        consistent += 1;
        match decide_representability(&r) {
            Representability::Representable { witness, slack } => {
                assert!(slack.is_positive());
                verify_witness(&witness, &r);
            }
            other => panic!("{other:?}"),
        }
    }
    assert_eq!(consistent, 43);
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn induced_relations_are_representable(seed in any::<u64>(), n in 1usize..=5, drop in 0.0f64..0.9) {
        let mut g = rng(seed);
        let num = classical(&mut g, n);
        let full = num.as_structure().induced_relation();
        // keep a random part of the declared pairs
        let strict: Vec<_> = full.strict_pairs().filter(|_| !g.gen_bool(drop)).collect();
        let equiv: Vec<_> = full.equiv_pairs().filter(|_| !g.gen_bool(drop)).collect();
        let r = ComparativeRelation::new(full.family().clone(), strict, equiv).unwrap();
        match decide_representability(&r) {
            Representability::Representable { witness, .. } => {
                verify_witness(&witness, &r);
                prop_assert!(extends_closure(&witness, &r));
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn deflation_is_a_faithful_representation(seed in any::<u64>(), n in 1usize..=6, m in 2u64..=5) {
        let num = inflated(&mut rng(seed), n, m);
        let res = deflate(&num).unwrap();
        prop_assert!(all_passed(&res.verification));
        let k = num.total().unwrap();
        for &e in num.family().events() {
            prop_assert_eq!(res.target.value(e).unwrap(), &(num.value(e).unwrap() / k));
        }
        let p = num.as_structure();
        let q = res.target.as_structure();
        prop_assert!(check_representation(&p, &q, &res.map, true).unwrap().passed());
        // transfers
        prop_assert_eq!(p.classify().total, q.classify().total);
        prop_assert!(q.classify().complete);
        prop_assert!(p.classify().rigid);
    }

    #[test]
    fn elementary_representation(seed in any::<u64>(), n in 1usize..=5) {
        let p = elementary(&mut rng(seed), n, 3);
        let standard = represent_elementary(&p, Scaling::Standard).unwrap();
        let doubled = represent_elementary(&p, Scaling::Doubled).unwrap();
        for res in [&standard, &doubled] {
            prop_assert!(all_passed(&res.verification));
            prop_assert_eq!(res.target.total(), Some(&Rational::one()));
            let q = res.target.as_structure();
            prop_assert!(check_representation(&p, &q, &res.map, false).unwrap().passed());
            prop_assert_eq!(p.classify().total, q.classify().total);
            // comparable pairs keep their strict order numerically
            let events = p.family().events();
            for i in 0..events.len() {
                for j in 0..events.len() {
                    if p.above(i, j) {
                        prop_assert!(res.target.values()[i] > res.target.values()[j]);
                    }
                }
            }
        }
        prop_assert_eq!(
            standard.target.as_structure().induced_relation().closed_pairs(),
            doubled.target.as_structure().induced_relation().closed_pairs()
        );
    }

    #[test]
    fn composition_and_restriction(seed in any::<u64>(), n in 1usize..=5, m in 2u64..=5) {
        let mut g = rng(seed);
        let num = inflated(&mut g, n, m);
        let res = deflate(&num).unwrap();
        let p = num.as_structure();
        let q = res.target.as_structure();
        // a strictly increasing relabelling of q's chain into a longer chain
        let len = q.scale().len();
        let mut marks: Vec<usize> = (0..3 * len).collect();
        while marks.len() > len {
            let i = g.gen_range(0..marks.len());
            marks.remove(i);
        }
        let t_scale = integer_chain(3 * len);
        let k = ScaleMap::new(q.scale().clone(), t_scale.clone(), marks.clone()).unwrap();
        let t_assignment = q.assignment().iter().map(|&l| marks[l]).collect();
        let t = ProbabilityStructure::new(q.family().clone(), t_scale, t_assignment).unwrap();
        prop_assert!(check_representation(&q, &t, &k, true).unwrap().passed());
        let composed = res.map.then(&k).unwrap();
        prop_assert!(check_representation(&p, &t, &composed, true).unwrap().passed());

        let sub = subfield(&mut g, n);
        let (ps, qs) = (p.restrict(&sub).unwrap(), q.restrict(&sub).unwrap());
        prop_assert!(check_representation(&ps, &qs, &res.map, true).unwrap().passed());
    }
}

/// A rigid target under a monomorphism forces a rigid source.
#[test]
fn faithful_representation_by_rigid_structure_transfers_rigidity() {
    let mut g = rng(41);
    for _ in 0..300 {
        let n = g.gen_range(1..=4);
        let m = g.gen_range(2..=5);
        let num = inflated(&mut g, n, m);
        let res = deflate(&num).unwrap();
        let q = res.target.as_structure();
        assert!(find(&res.verification, "MONOMORPHISM").unwrap().passed());
        if find(&q.check_axioms(true), "ECA").unwrap().passed() {
            assert!(find(&num.as_structure().check_axioms(true), "ECA")
                .unwrap()
                .passed());
        }
    }
}

#[test]
fn cyclic_relation_is_rejected_with_the_weak_order_report() {
    let f = EventFamily::power_set_of_width(2).unwrap();
    let a = Event::singleton(2, 0);
    let b = Event::singleton(2, 1);
    let r = ComparativeRelation::new(f, [(a, b), (b, a)], []).unwrap();
    match decide_representability(&r) {
        Representability::NotRepresentable(Certificate::Cyclic(report)) => {
            assert_eq!(report.axiom, "WOA");
            assert!(report.failed());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn difference_vectors_are_antisymmetric() {
    let d = non_additive().differences();
    let negated: HashSet<Vec<i8>> = d.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    assert!(d.is_disjoint(&negated));
}
