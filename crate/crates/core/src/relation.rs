//! Comparative probability relations on events.
//!
//! A relation is given by declared strict pairs `A ≻ B` and equivalences
//! `A ≍ B`. Every check runs on its closure: equivalences are closed into
//! classes, strict pairs are lifted to classes and closed transitively. Under
//! that closure `A ≍ A′`, `B ≍ B′` and `A ≻ B` always give `A′ ≻ B′`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::axioms::{self, EventOrder};
use crate::event::{Event, EventFamily};
use crate::report::{AxiomReport, Witness};
use crate::scale::{ClassOrder, Scale};
use crate::structure::ProbabilityStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("event {0:?} is not in the family")]
    EventNotInFamily(Event),
    #[error("{0:?} and {1:?} are declared both strictly ordered and equivalent")]
    Conflict(Event, Event),
    #[error("the strict relation has a cycle through {0:?}")]
    CycleDetected(Event),
    #[error("{0:?} ≍ {1:?} and {2:?} ≍ {3:?} but the strict order does not carry over")]
    CongruenceViolation(Event, Event, Event, Event),
}

/// Strict and equivalence pairs over the events of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparativeRelation {
    family: EventFamily,
    strict: Vec<(usize, usize)>,
    equiv: Vec<(usize, usize)>,
}

/// The closed relation as explicit pair lists: every `(A, B)` with `A ≻ B`,
/// and every `(A, B)` with `A < B` canonically and `A ≍ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPairs {
    pub strict: Vec<(Event, Event)>,
    pub equiv: Vec<(Event, Event)>,
}

struct Closure<'a>(&'a ClassOrder);

impl EventOrder for Closure<'_> {
    fn above(&self, a: usize, b: usize) -> bool {
        self.0.above(a, b)
    }
    fn same(&self, a: usize, b: usize) -> bool {
        self.0.same_class(a, b)
    }
}

impl ComparativeRelation {
    pub fn new(
        family: EventFamily,
        strict: impl IntoIterator<Item = (Event, Event)>,
        equiv: impl IntoIterator<Item = (Event, Event)>,
    ) -> Result<Self, RelationError> {
        let index = |e: Event| family.index_of(e).ok_or(RelationError::EventNotInFamily(e));
        let mut s = Vec::new();
        for (a, b) in strict {
            s.push((index(a)?, index(b)?));
        }
        let mut q = Vec::new();
        for (a, b) in equiv {
            let (a, b) = (index(a)?, index(b)?);
            if a != b {
                q.push((a.min(b), a.max(b)));
            }
        }
        s.sort_unstable();
        s.dedup();
        q.sort_unstable();
        q.dedup();
        for &(a, b) in &s {
            if q.binary_search(&(a.min(b), a.max(b))).is_ok() {
                return Err(RelationError::Conflict(family.event(a), family.event(b)));
            }
        }
        Ok(ComparativeRelation {
            family,
            strict: s,
            equiv: q,
        })
    }

    pub fn family(&self) -> &EventFamily {
        &self.family
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (Event, Event)> + '_ {
        self.strict
            .iter()
            .map(|&(a, b)| (self.family.event(a), self.family.event(b)))
    }

    pub fn equiv_pairs(&self) -> impl Iterator<Item = (Event, Event)> + '_ {
        self.equiv
            .iter()
            .map(|&(a, b)| (self.family.event(a), self.family.event(b)))
    }

    pub fn closure(&self) -> ClassOrder {
        ClassOrder::close(self.family.len(), &self.strict, &self.equiv)
    }

    pub fn closed_pairs(&self) -> ClosedPairs {
        let c = self.closure();
        let n = self.family.len();
        let ev = |i| self.family.event(i);
        let mut strict = Vec::new();
        let mut equiv = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if c.above(a, b) {
                    strict.push((ev(a), ev(b)));
                }
                if a < b && c.same_class(a, b) {
                    equiv.push((ev(a), ev(b)));
                }
            }
        }
        ClosedPairs { strict, equiv }
    }

    /// No `≍`-class lies strictly above itself in the closure.
    pub fn is_acyclic(&self) -> bool {
        self.closure().is_acyclic()
    }

    /// WOA, NTA, NNA and AA on the closure, in that order. `≽` is read as
    /// `≻`, `≍` or identity. AA is reported undetermined when the family is
    /// not closed under union.
    pub fn check_de_finetti(&self) -> Vec<AxiomReport> {
        let closure = self.closure();
        let order = Closure(&closure);
        let f = &self.family;
        let mut reports = Vec::with_capacity(4);

        let asym = axioms::asymmetry("WOA", f, &order);
        let trans = axioms::transitivity("WOA", f, &order, false);
        let mut woa: Vec<Witness> = asym.witnesses().to_vec();
        woa.extend_from_slice(trans.witnesses());
        reports.push(AxiomReport::from_witnesses("WOA", woa));

        let (empty, full) = (f.empty_event(), f.universe_event());
        reports.push(if f.width() == 0 {
            AxiomReport::pass("NTA")
        } else {
            match (f.index_of(full), f.index_of(empty)) {
                (Some(u), Some(e)) => {
                    let w = if closure.above(u, e) {
                        Vec::new()
                    } else {
                        alloc::vec![Witness::events("universe-not-above-empty", [full, empty])]
                    };
                    AxiomReport::from_witnesses("NTA", w)
                }
                _ => AxiomReport::undetermined(
                    "NTA",
                    "the universe or the empty event is not permissible",
                ),
            }
        });

        reports.push(match f.index_of(empty) {
            Some(e) => {
                let w = (0..f.len())
                    .filter(|&a| !order.weakly(a, e))
                    .map(|a| Witness::events("below-empty", [f.event(a)]))
                    .collect();
                AxiomReport::from_witnesses("NNA", w)
            }
            None => AxiomReport::undetermined("NNA", "the empty event is not permissible"),
        });

        reports.push(if f.is_union_closed() {
            axioms::additivity("AA", f, &order, false)
        } else {
            AxiomReport::undetermined("AA", "family is not closed under union")
        });
        reports
    }

    /// ASA, STA, NSTA (transitivity of `≽`), MA and IMA on the closure.
    pub fn check_derived(&self) -> Vec<AxiomReport> {
        let closure = self.closure();
        let order = Closure(&closure);
        let f = &self.family;
        alloc::vec![
            axioms::asymmetry("ASA", f, &order),
            axioms::transitivity("STA", f, &order, false),
            axioms::transitivity("NSTA", f, &order, true),
            axioms::monotone("MA", f, &order),
            axioms::inclusion_monotone("IMA", f, &order),
        ]
    }

    /// Looks for `A ≍ A′`, `B ≍ B′`, `A ≻ B` without `A′ ≻ B′` in the closure.
    pub fn congruence_violation(&self) -> Option<(Event, Event, Event, Event)> {
        let c = self.closure();
        let n = self.family.len();
        for a in 0..n {
            for b in 0..n {
                if !c.above(a, b) {
                    continue;
                }
                for &a2 in c.members(c.class_of(a)) {
                    for &b2 in c.members(c.class_of(b)) {
                        if !c.above(a2, b2) {
                            let ev = |i| self.family.event(i);
                            return Some((ev(a), ev(a2), ev(b), ev(b2)));
                        }
                    }
                }
            }
        }
        None
    }

    /// The structure whose scale is the set of `≍`-classes ordered by the
    /// closure, mapping each event to its class. Class `k` is labelled `ck`;
    /// classes are numbered by their least event.
    pub fn to_structure(&self) -> Result<ProbabilityStructure, RelationError> {
        let closure = self.closure();
        if let Some(c) = closure.cyclic_class() {
            return Err(RelationError::CycleDetected(
                self.family.event(closure.members(c)[0]),
            ));
        }
        if let Some((a, a2, b, b2)) = self.congruence_violation() {
            return Err(RelationError::CongruenceViolation(a, a2, b, b2));
        }
        let k = closure.class_count();
        let labels: Vec<String> = (0..k).map(|c| format!("c{c}")).collect();
        let strict: Vec<(usize, usize)> = (0..k)
            .flat_map(|c| closure.matrix().row(c).map(move |d| (c, d)))
            .collect();
        let scale = Scale::from_indices(labels, &strict, &[]).expect("closure is acyclic");
        let assignment = (0..self.family.len())
            .map(|e| closure.class_of(e))
            .collect();
        Ok(
            ProbabilityStructure::new(self.family.clone(), scale, assignment)
                .expect("assignment covers the family"),
        )
    }
}

/// Free-function form of [`ComparativeRelation::to_structure`].
pub fn structure_from_relation(
    relation: &ComparativeRelation,
) -> Result<ProbabilityStructure, RelationError> {
    relation.to_structure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::{power_set, Universe};
    use crate::report::find;

    fn setup() -> (Universe, EventFamily) {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = power_set(&u);
        (u, f)
    }

    #[test]
    fn nna_failure_names_the_event() {
        let (u, f) = setup();
        let a = u.event(["a"]).unwrap();
        let r = ComparativeRelation::new(f, [(u.empty_event(), a)], []).unwrap();
        let nna = find(&r.check_de_finetti(), "NNA").unwrap().clone();
        assert!(nna.failed());
        assert!(nna
            .witnesses()
            .contains(&Witness::events("below-empty", [a])));
    }

    #[test]
    fn woa_failure_on_two_cycle() {
        let (u, f) = setup();
        let a = u.event(["a"]).unwrap();
        let b = u.event(["b"]).unwrap();
        let r = ComparativeRelation::new(f, [(a, b), (b, a)], []).unwrap();
        let woa = find(&r.check_de_finetti(), "WOA").unwrap().clone();
        assert!(woa.failed());
        assert!(woa
            .witnesses()
            .contains(&Witness::events("asymmetry", [a, b])));
        assert!(!r.is_acyclic());
        assert!(matches!(
            r.to_structure(),
            Err(RelationError::CycleDetected(_))
        ));
    }

    #[test]
    fn conflicting_declarations_rejected() {
        let (u, f) = setup();
        let a = u.event(["a"]).unwrap();
        let b = u.event(["b"]).unwrap();
        assert_eq!(
            ComparativeRelation::new(f, [(a, b)], [(b, a)]),
            Err(RelationError::Conflict(a, b))
        );
    }

    #[test]
    fn events_must_belong_to_family() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = EventFamily::new(2, [u.empty_event(), u.full_event()]).unwrap();
        let a = u.event(["a"]).unwrap();
        assert_eq!(
            ComparativeRelation::new(f, [(a, u.empty_event())], []),
            Err(RelationError::EventNotInFamily(a))
        );
    }

    #[test]
    fn ma_failure_names_inclusion_pair() {
        let (u, f) = setup();
        let a = u.event(["a"]).unwrap();
        let ab = u.full_event();
        let r = ComparativeRelation::new(f, [(ab, u.empty_event())], []).unwrap();
        let ma = find(&r.check_derived(), "MA").unwrap().clone();
        assert!(ma
            .witnesses()
            .contains(&Witness::events("inclusion", [ab, a])));
    }

    #[test]
    fn empty_relation_passes_asa_and_sta() {
        let u = Universe::new(["a"]).unwrap();
        let f = EventFamily::new(1, [u.empty_event(), u.full_event()]).unwrap();
        let r = ComparativeRelation::new(f, [], []).unwrap();
        let d = r.check_derived();
        assert!(find(&d, "ASA").unwrap().passed());
        assert!(find(&d, "STA").unwrap().passed());
        assert!(r.is_acyclic());
    }

    #[test]
    fn acyclicity_lifts_through_equivalence() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let f = power_set(&u);
        let (a, b, c) = (
            u.event(["a"]).unwrap(),
            u.event(["b"]).unwrap(),
            u.event(["c"]).unwrap(),
        );
        let r = ComparativeRelation::new(f.clone(), [(a, b), (c, a)], [(b, c)]).unwrap();
        assert!(!r.is_acyclic());

        let ab = u.event(["a", "b"]).unwrap();
        let r = ComparativeRelation::new(f, [(ab, a), (a, u.empty_event())], []).unwrap();
        assert!(r.is_acyclic());
    }

    #[test]
    fn structure_from_minimal_relation() {
        let u = Universe::new(["a"]).unwrap();
        let f = EventFamily::new(1, [u.empty_event(), u.full_event()]).unwrap();
        let r = ComparativeRelation::new(f, [(u.full_event(), u.empty_event())], []).unwrap();
        let p = r.to_structure().unwrap();
        assert_eq!(p.scale().class_count(), 2);
        let (iu, ie) = (p.family().index_of(u.full_event()).unwrap(), 0);
        assert!(p.above(iu, ie));
    }

    #[test]
    fn quotient_merges_equivalent_singletons() {
        let (u, f) = setup();
        let a = u.event(["a"]).unwrap();
        let b = u.event(["b"]).unwrap();
        let r = ComparativeRelation::new(f, [(u.full_event(), a)], [(a, b)]).unwrap();
        let p = r.to_structure().unwrap();
        // ∅, {a}≍{b}, {a b}
        assert_eq!(p.scale().class_count(), 3);
        let ia = p.family().index_of(a).unwrap();
        let ib = p.family().index_of(b).unwrap();
        assert_eq!(p.assignment()[ia], p.assignment()[ib]);
        assert_eq!(p.induced_relation().closed_pairs(), r.closed_pairs());
    }
}
