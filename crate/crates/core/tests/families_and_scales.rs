use proptest::prelude::*;
use qualprob_core::report::all_passed;
use qualprob_core::*;
use testkit::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn family_from_mask(width: usize, mask: u32) -> EventFamily {
    let events = (0..1u32 << width)
        .filter(|m| mask >> m & 1 == 1)
        .map(|m| Event::from_bits(width, m).unwrap());
    EventFamily::new(width, events).unwrap()
}

fn arb_event(width: usize) -> impl Strategy<Value = Event> {
    (0u32..1 << width).prop_map(move |b| Event::from_bits(width, b).unwrap())
}

fn arb_seed() -> impl Strategy<Value = EventFamily> {
    (1usize..=4).prop_flat_map(|w| {
        prop::collection::vec(0u32..1 << w, 0..5).prop_map(move |bits| {
            let mut bits = bits;
            bits.sort_unstable();
            bits.dedup();
            EventFamily::new(w, bits.into_iter().map(|b| Event::from_bits(w, b).unwrap())).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn closure_is_idempotent_and_a_field(seed in arb_seed()) {
        for mode in [ClosureMode::Algebra, ClosureMode::Field] {
            let once = close_family(&seed, mode);
            prop_assert_eq!(close_family(&once, mode), once.clone());
            prop_assert!(seed.is_subfamily_of(&once));
        }
        let field = close_family(&seed, ClosureMode::Field);
        prop_assert!(check_family(&field, FamilyAxiom::Sip3).passed());
        prop_assert!(check_family(&field, FamilyAxiom::Sip1).passed());
    }

    #[test]
    fn set_operations_commute_and_de_morgan(a in arb_event(4), b in arb_event(4)) {
        for op in [SetOp::Union, SetOp::Intersection] {
            prop_assert_eq!(combine(a, b, op).unwrap(), combine(b, a, op).unwrap());
        }
        prop_assert_eq!(a.union(b).complement(), a.complement().intersection(b.complement()));
        prop_assert_eq!(a.intersection(b).complement(), a.complement().union(b.complement()));
        prop_assert_eq!(a.difference(b), a.intersection(b.complement()));
    }

    #[test]
    fn scale_order_is_a_strict_partial_order(seed in any::<u64>(), len in 1usize..=8) {
        let s = random_scale(&mut rng(seed), len);
        let strict = |a, b| s.holds_ix(a, b, Relation::Strict);
        for a in 0..len {
            prop_assert!(!strict(a, a));
            for b in 0..len {
                prop_assert!(!(strict(a, b) && strict(b, a)));
                for c in 0..len {
                    if strict(a, b) && strict(b, c) {
                        prop_assert!(strict(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn linear_extension_is_consistent_and_deterministic(seed in any::<u64>(), len in 1usize..=8) {
        let s = random_scale(&mut rng(seed), len);
        let ext = s.linear_extension().classes;
        prop_assert_eq!(&ext, &s.clone().linear_extension().classes);
        prop_assert_eq!(ext.len(), s.class_count());
        let pos = |c: usize| ext.iter().position(|&x| x == c).unwrap();
        for c in 0..s.class_count() {
            for d in 0..s.class_count() {
                if s.order().class_above(c, d) {
                    prop_assert!(pos(d) < pos(c));
                }
            }
        }
    }
}

#[test]
fn sip2_implies_sip3_for_every_family_up_to_three_elements() {
    for width in 0..=3usize {
        let events = 1u32 << width;
        for mask in 0u64..1 << events {
            let f = family_from_mask(width, mask as u32);
            if !f.contains_universe() {
                continue;
            }
            if check_family(&f, FamilyAxiom::Sip2).passed() {
                assert!(check_family(&f, FamilyAxiom::Sip3).passed(), "{f:?}");
            }
        }
    }
}

#[test]
fn total_scale_has_a_unique_extension() {
    // a total order admits exactly one linear extension; compare against
    // the order given by counting classes below
    let mut r = rng(7);
    let mut seen = 0;
    for _ in 0..500 {
        let len = 5;
        let s = random_scale(&mut r, len);
        let labels: Vec<&str> = s.labels().iter().map(String::as_str).collect();
        if !s.is_total_on(&labels).unwrap().is_total() {
            continue;
        }
        let mut by_height: Vec<usize> = (0..s.class_count()).collect();
        by_height.sort_by_key(|&c| {
            (0..s.class_count())
                .filter(|&d| s.order().class_above(c, d))
                .count()
        });
        assert_eq!(s.linear_extension().classes, by_height);
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn totality_criterion_on_complement_closed_families() {
    // a complete structure on a field is total iff every singleton is permissible
    for width in 1..=3usize {
        let events = 1u32 << width;
        let weights: Vec<Rational> = (1..=width as i64).map(Rational::from_integer).collect();
        let n = NumericProbability::from_weights(&universe(width), &weights, WeightMode::Normalize)
            .unwrap();
        for mask in 0u64..1 << events {
            let f = family_from_mask(width, mask as u32);
            if !check_family(&f, FamilyAxiom::Sip1).passed() {
                continue;
            }
            let p = n.restrict(&f).unwrap().as_structure();
            let class = p.classify();
            assert!(class.complete);
            assert_eq!(class.total, f.contains_all_singletons(), "{f:?}");
        }
    }
}

#[test]
fn closing_a_field_of_a_partition_changes_nothing() {
    let mut r = rng(3);
    for _ in 0..100 {
        let f = subfield(&mut r, 5);
        assert_eq!(close_family(&f, ClosureMode::Field), f);
        assert!(all_passed(&[
            check_family(&f, FamilyAxiom::Sip1),
            check_family(&f, FamilyAxiom::Sip2),
            check_family(&f, FamilyAxiom::Sip3),
        ]));
    }
}
