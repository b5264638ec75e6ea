//! Event-level checks shared by comparative relations and probability
//! structures. Both present an order on the events of a family through
//! [`EventOrder`]; the checks here only see that view.

use alloc::vec::Vec;

use crate::event::EventFamily;
use crate::report::{AxiomReport, Witness};

/// A (possibly cyclic) strict relation and an equivalence on family indices.
pub(crate) trait EventOrder {
    fn above(&self, a: usize, b: usize) -> bool;
    fn same(&self, a: usize, b: usize) -> bool;

    fn weakly(&self, a: usize, b: usize) -> bool {
        a == b || self.same(a, b) || self.above(a, b)
    }
}

/// Calls `visit(a, b, c, a ∪ c, b ∪ c)` for every triple of family indices
/// with `C` non-empty and disjoint from `A ∪ B`, skipping triples whose unions
/// fall outside the family.
pub(crate) fn for_each_disjoint_triple(
    family: &EventFamily,
    mut visit: impl FnMut(usize, usize, usize, usize, usize),
) {
    let events = family.events();
    for (ia, &a) in events.iter().enumerate() {
        for (ib, &b) in events.iter().enumerate() {
            let free = a.union(b).complement();
            let free_bits = free.bits();
            let mut sub = free_bits;
            while sub != 0 {
                let c = crate::event::Event::from_bits(family.width(), sub).expect("submask");
                if let (Some(ic), Some(iac), Some(ibc)) = (
                    family.index_of(c),
                    family.index_of(a.union(c)),
                    family.index_of(b.union(c)),
                ) {
                    visit(ia, ib, ic, iac, ibc);
                }
                sub = (sub - 1) & free_bits;
            }
        }
    }
}

/// `A ≻ B ⇔ A∪C ≻ B∪C` (or with `≍` in place of `≻` when `equality` is set)
/// for all disjoint triples. Each failure names the direction that broke.
pub(crate) fn additivity(
    name: &'static str,
    family: &EventFamily,
    order: &impl EventOrder,
    equality: bool,
) -> AxiomReport {
    let rel = |x: usize, y: usize| {
        if equality {
            order.same(x, y)
        } else {
            order.above(x, y)
        }
    };
    let mut witnesses = Vec::new();
    for_each_disjoint_triple(family, |ia, ib, ic, iac, ibc| {
        let before = rel(ia, ib);
        let after = rel(iac, ibc);
        if before != after {
            let clause = if before { "forward" } else { "backward" };
            witnesses.push(Witness::events(
                clause,
                [family.event(ia), family.event(ib), family.event(ic)],
            ));
        }
    });
    AxiomReport::from_witnesses(name, witnesses)
}

/// `A ⊇ B ⇒ A ≽ B` over every inclusion pair of the family.
pub(crate) fn monotone(
    name: &'static str,
    family: &EventFamily,
    order: &impl EventOrder,
) -> AxiomReport {
    let mut witnesses = Vec::new();
    let events = family.events();
    for (ia, &a) in events.iter().enumerate() {
        for (ib, &b) in events.iter().enumerate() {
            if ia != ib && a.is_superset_of(b) && !order.weakly(ia, ib) {
                witnesses.push(Witness::events("inclusion", [a, b]));
            }
        }
    }
    AxiomReport::from_witnesses(name, witnesses)
}

/// `(A ⊇ B ∧ B ≽ C) ∨ (B ⊇ C ∧ A ≽ B) ⇒ A ≽ C`.
pub(crate) fn inclusion_monotone(
    name: &'static str,
    family: &EventFamily,
    order: &impl EventOrder,
) -> AxiomReport {
    let mut witnesses = Vec::new();
    let events = family.events();
    let n = events.len();
    for ia in 0..n {
        for ib in 0..n {
            let a_sup_b = events[ia].is_superset_of(events[ib]);
            let a_weak_b = order.weakly(ia, ib);
            if !a_sup_b && !a_weak_b {
                continue;
            }
            for ic in 0..n {
                if order.weakly(ia, ic) {
                    continue;
                }
                let clause = if a_sup_b && order.weakly(ib, ic) {
                    "superset-then-weak"
                } else if a_weak_b && events[ib].is_superset_of(events[ic]) {
                    "weak-then-superset"
                } else {
                    continue;
                };
                witnesses.push(Witness::events(
                    clause,
                    [events[ia], events[ib], events[ic]],
                ));
            }
        }
    }
    AxiomReport::from_witnesses(name, witnesses)
}

/// `A ≻ B ⇒ ¬(B ≻ A)`. Distinct mutually related events are reported as
/// pairs; an event related to itself only through its own class is reported
/// alone under `irreflexivity`.
pub(crate) fn asymmetry(
    name: &'static str,
    family: &EventFamily,
    order: &impl EventOrder,
) -> AxiomReport {
    let mut witnesses = Vec::new();
    let n = family.len();
    for a in 0..n {
        let mut has_partner = false;
        for b in 0..n {
            if a != b && order.above(a, b) && order.above(b, a) {
                has_partner = true;
                if a < b {
                    witnesses.push(Witness::events(
                        "asymmetry",
                        [family.event(a), family.event(b)],
                    ));
                }
            }
        }
        if !has_partner && order.above(a, a) {
            witnesses.push(Witness::events("irreflexivity", [family.event(a)]));
        }
    }
    AxiomReport::from_witnesses(name, witnesses)
}

/// Transitivity of `≻` (or of `≽` when `weak` is set) over all event triples.
pub(crate) fn transitivity(
    name: &'static str,
    family: &EventFamily,
    order: &impl EventOrder,
    weak: bool,
) -> AxiomReport {
    let rel = |x: usize, y: usize| {
        if weak {
            order.weakly(x, y)
        } else {
            order.above(x, y)
        }
    };
    let mut witnesses = Vec::new();
    let n = family.len();
    for a in 0..n {
        for b in 0..n {
            if !rel(a, b) {
                continue;
            }
            for c in 0..n {
                if rel(b, c) && !rel(a, c) {
                    witnesses.push(Witness::events(
                        "transitivity",
                        [family.event(a), family.event(b), family.event(c)],
                    ));
                }
            }
        }
    }
    AxiomReport::from_witnesses(name, witnesses)
}
