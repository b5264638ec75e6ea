//! Probability structures: a total assignment of scale labels to the events
//! of a family.
//!
//! Scale-level equality is class identity: two events have "the same
//! probability" when their labels fall in one `≍`-class of the scale.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::axioms::{self, EventOrder};
use crate::event::{is_set_algebra, Event, EventFamily};
use crate::relation::ComparativeRelation;
use crate::report::{self, AxiomReport, Witness};
use crate::scale::{Scale, Totality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("assignment has {got} entries for a family of {expected} events")]
    AssignmentLength { expected: usize, got: usize },
    #[error("label index {0} is not in the scale")]
    UnknownLabelIndex(usize),
    #[error("unknown scale label `{0}`")]
    UnknownLabel(String),
    #[error("event {0:?} has no assigned label")]
    Unassigned(Event),
    #[error("event {0:?} is not in the family")]
    EventNotInFamily(Event),
    #[error("the first family is not contained in the second")]
    NotSubfamily,
    #[error("the structures use different scales")]
    ScaleMismatch,
    #[error("the family is not closed under complement")]
    NotComplementClosed,
}

/// A mapping from each event of a family to a label of a scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityStructure {
    family: EventFamily,
    scale: Scale,
    assignment: Vec<usize>,
}

/// Computed classification flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub rigid: bool,
    pub complete: bool,
    pub total: bool,
    /// `None` when some singleton is not permissible.
    pub elementary: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstructureMode {
    /// Strict comparisons agree on the smaller family.
    Plain,
    /// Values agree on the smaller family.
    Robust,
}

/// Result of the complementarity experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcaOutcome {
    Holds,
    /// `P(A) ≻ P(B)` and `P(Aᶜ) ≻ P(Bᶜ)`.
    Counterexample(Event, Event),
}

impl EventOrder for ProbabilityStructure {
    fn above(&self, a: usize, b: usize) -> bool {
        ProbabilityStructure::above(self, a, b)
    }
    fn same(&self, a: usize, b: usize) -> bool {
        ProbabilityStructure::same(self, a, b)
    }
}

impl ProbabilityStructure {
    /// `assignment[i]` is the label index of `family.event(i)`.
    pub fn new(
        family: EventFamily,
        scale: Scale,
        assignment: Vec<usize>,
    ) -> Result<Self, StructureError> {
        if assignment.len() != family.len() {
            return Err(StructureError::AssignmentLength {
                expected: family.len(),
                got: assignment.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&l| l >= scale.len()) {
            return Err(StructureError::UnknownLabelIndex(bad));
        }
        Ok(ProbabilityStructure {
            family,
            scale,
            assignment,
        })
    }

    /// Builds from `(event, label)` pairs; every family event must appear.
    pub fn from_labels<S: AsRef<str>>(
        family: EventFamily,
        scale: Scale,
        entries: impl IntoIterator<Item = (Event, S)>,
    ) -> Result<Self, StructureError> {
        let mut assignment = vec![usize::MAX; family.len()];
        for (e, label) in entries {
            let i = family
                .index_of(e)
                .ok_or(StructureError::EventNotInFamily(e))?;
            let l = scale
                .index_of(label.as_ref())
                .ok_or_else(|| StructureError::UnknownLabel(label.as_ref().into()))?;
            assignment[i] = l;
        }
        if let Some(i) = assignment.iter().position(|&l| l == usize::MAX) {
            return Err(StructureError::Unassigned(family.event(i)));
        }
        Self::new(family, scale, assignment)
    }

    pub fn family(&self) -> &EventFamily {
        &self.family
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn label_of(&self, event: Event) -> Option<&str> {
        self.family
            .index_of(event)
            .map(|i| self.scale.label(self.assignment[i]))
    }

    /// Scale class of the event at family index `i`.
    pub fn class(&self, i: usize) -> usize {
        self.scale.class_of(self.assignment[i])
    }

    /// `P(A) ≻ P(B)` for family indices.
    pub fn above(&self, a: usize, b: usize) -> bool {
        self.scale.order().class_above(self.class(a), self.class(b))
    }

    /// `P(A) = P(B)` (same class).
    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class(a) == self.class(b)
    }

    pub fn weakly_above(&self, a: usize, b: usize) -> bool {
        self.same(a, b) || self.above(a, b)
    }

    /// Restricts the assignment to a subfamily, keeping the scale.
    pub fn restrict(&self, subfamily: &EventFamily) -> Result<Self, StructureError> {
        if !subfamily.is_subfamily_of(&self.family) {
            return Err(StructureError::NotSubfamily);
        }
        let assignment = subfamily
            .events()
            .iter()
            .map(|&e| self.assignment[self.family.index_of(e).expect("subfamily")])
            .collect();
        Self::new(subfamily.clone(), self.scale.clone(), assignment)
    }

    /// Labels in the image of the assignment, ascending, without repeats.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.assignment.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// PNA, ICA, PAA and optionally ECA.
    ///
    /// PNA is undetermined when `U` or `∅` is missing; PAA and ECA are
    /// undetermined unless the family is a set algebra containing `U`.
    pub fn check_axioms(&self, include_eca: bool) -> Vec<AxiomReport> {
        let f = &self.family;
        let mut reports = Vec::with_capacity(4);
        let (empty, full) = (f.empty_event(), f.universe_event());
        reports.push(if f.width() == 0 {
            AxiomReport::pass("PNA")
        } else {
            match (f.index_of(full), f.index_of(empty)) {
                (Some(u), Some(e)) if self.above(u, e) => AxiomReport::pass("PNA"),
                (Some(_), Some(_)) => AxiomReport::from_witnesses(
                    "PNA",
                    vec![Witness::events("universe-not-above-empty", [full, empty])],
                ),
                _ => AxiomReport::undetermined(
                    "PNA",
                    "the universe or the empty event is not permissible",
                ),
            }
        });
        reports.push(axioms::monotone("ICA", f, self));
        let algebra = is_set_algebra(f);
        let additive = |name, equality| {
            if algebra {
                axioms::additivity(name, f, self, equality)
            } else {
                AxiomReport::undetermined(
                    name,
                    "family is not a set algebra containing the universe",
                )
            }
        };
        reports.push(additive("PAA", false));
        if include_eca {
            reports.push(additive("ECA", true));
        }
        reports
    }

    pub fn classify(&self) -> StructureClass {
        let mut notes = Vec::new();
        let eca = self.check_axioms(true).pop().expect("ECA report");
        if let Some(n) = eca.note() {
            notes.push(alloc::format!("rigid: {n}"));
        }
        let complete = self.scale.is_total_on_indices(&self.image()).is_total();
        let elementary = if self.family.contains_all_singletons() {
            Some(self.is_elementary())
        } else {
            notes.push("elementary: some singleton is not permissible".to_string());
            None
        };
        StructureClass {
            rigid: eca.passed(),
            complete,
            total: self.family.is_power_set(),
            elementary,
            notes,
        }
    }

    /// Whether image classes are totally ordered, with an incomparable pair
    /// otherwise.
    pub fn completeness(&self) -> Totality {
        self.scale.is_total_on_indices(&self.image())
    }

    /// For events of equal size: `P(A) ≻ P(B)` iff some bijection `A → B`
    /// is componentwise `≽` on singleton values with at least one `≻`.
    ///
    /// Element equality `uᵢ = vᵢ` is read as singleton values in one class.
    /// Pairs of different sizes are not constrained. Requires every singleton
    /// to be permissible.
    fn is_elementary(&self) -> bool {
        let width = self.family.width();
        let singleton_class: Vec<usize> = (0..width)
            .map(|i| {
                self.class(
                    self.family
                        .index_of(Event::singleton(width, i))
                        .expect("singletons checked by caller"),
                )
            })
            .collect();
        let order = self.scale.order();
        let weak = |c: usize, d: usize| c == d || order.class_above(c, d);
        let mut distinct = singleton_class.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let chain = self.scale.is_total_on_indices(
            &distinct
                .iter()
                .map(|&c| self.scale.class_members(c)[0])
                .collect::<Vec<_>>(),
        );
        // rank of each class along a linear extension (only used for chains)
        let mut rank = vec![0usize; self.scale.class_count()];
        for (pos, &c) in self.scale.linear_extension().classes.iter().enumerate() {
            rank[c] = pos;
        }
        let dominates = |a: Event, b: Event| -> bool {
            let mut xs: Vec<usize> = a.members().map(|u| singleton_class[u]).collect();
            let mut ys: Vec<usize> = b.members().map(|v| singleton_class[v]).collect();
            if chain.is_total() {
                xs.sort_unstable_by(|p, q| rank[*q].cmp(&rank[*p]));
                ys.sort_unstable_by(|p, q| rank[*q].cmp(&rank[*p]));
                xs.iter().zip(&ys).all(|(&x, &y)| weak(x, y))
                    && xs.iter().zip(&ys).any(|(&x, &y)| x != y)
            } else {
                let mut used = vec![false; ys.len()];
                dominating_matching(&xs, &ys, 0, false, &mut used, &weak)
            }
        };
        let events = self.family.events();
        for (i, &a) in events.iter().enumerate() {
            for (j, &b) in events.iter().enumerate() {
                if i != j && a.len() == b.len() && self.above(i, j) != dominates(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// All pairs `A ≻ B` with `P(A) ≻ P(B)` and `A ≍ B` with `P(A) = P(B)`.
    pub fn induced_relation(&self) -> ComparativeRelation {
        let n = self.family.len();
        let ev = |i| self.family.event(i);
        let mut strict = Vec::new();
        let mut equiv = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.above(a, b) {
                    strict.push((ev(a), ev(b)));
                } else if a < b && self.same(a, b) {
                    equiv.push((ev(a), ev(b)));
                }
            }
        }
        ComparativeRelation::new(self.family.clone(), strict, equiv)
            .expect("induced pairs are consistent")
    }

    /// Checks `self` as a (robust) substructure of `other`.
    pub fn substructure_of(
        &self,
        other: &ProbabilityStructure,
        mode: SubstructureMode,
    ) -> Result<AxiomReport, StructureError> {
        if !self.family.is_subfamily_of(&other.family) {
            return Err(StructureError::NotSubfamily);
        }
        if self.scale != other.scale {
            return Err(StructureError::ScaleMismatch);
        }
        let to_other: Vec<usize> = self
            .family
            .events()
            .iter()
            .map(|&e| other.family.index_of(e).expect("subfamily"))
            .collect();
        let mut witnesses = Vec::new();
        let n = self.family.len();
        let name = match mode {
            SubstructureMode::Plain => {
                for a in 0..n {
                    for b in 0..n {
                        let mine = self.above(a, b);
                        let theirs = other.above(to_other[a], to_other[b]);
                        if mine != theirs {
                            let clause = if mine {
                                "strict-only-in-first"
                            } else {
                                "strict-only-in-second"
                            };
                            witnesses.push(Witness::events(
                                clause,
                                [self.family.event(a), self.family.event(b)],
                            ));
                        }
                    }
                }
                "SUBSTRUCTURE"
            }
            SubstructureMode::Robust => {
                for a in 0..n {
                    if self.class(a) != other.class(to_other[a]) {
                        witnesses.push(Witness {
                            terms: vec![
                                report::Term::Event(self.family.event(a)),
                                report::Term::Element(self.scale.label(self.assignment[a]).into()),
                                report::Term::Element(
                                    other.scale.label(other.assignment[to_other[a]]).into(),
                                ),
                            ],
                            clause: "value-differs",
                        });
                    }
                }
                "ROBUST-SUBSTRUCTURE"
            }
        };
        Ok(AxiomReport::from_witnesses(name, witnesses))
    }

    /// Consequences of the structure axioms, each as its own report:
    ///
    /// - `TOP`: `P(U) ≽ P(A)`
    /// - `UNION-MONO`: `P(A ∪ B) ≽ P(A)`
    /// - `INTERSECTION-MONO`: `P(A) ≽ P(A ∩ B)`
    /// - `ASA`, `IMA`
    /// - `WEAK-ADDITIVITY`: `P(A) ≽ P(B) ⇔ P(A∪C) ≽ P(B∪C)`, only for rigid
    ///   structures
    /// - `PCTA`: every two events are `≽`-comparable, only for complete
    ///   structures
    /// - `HOM`: `P` is an order homomorphism from `(F, ⊇)` into the scale
    pub fn verify_consequences(&self) -> Vec<AxiomReport> {
        let f = &self.family;
        let algebra = is_set_algebra(f);
        let needs_algebra = |name| {
            AxiomReport::undetermined(name, "family is not a set algebra containing the universe")
        };
        let mut reports = Vec::new();

        reports.push(if !algebra {
            needs_algebra("TOP")
        } else {
            let u = f.index_of(f.universe_event()).expect("algebra contains U");
            let w = (0..f.len())
                .filter(|&a| !self.weakly_above(u, a))
                .map(|a| Witness::events("below", [f.universe_event(), f.event(a)]))
                .collect();
            AxiomReport::from_witnesses("TOP", w)
        });

        let pairwise = |name: &'static str, build: fn(Event, Event) -> (Event, Event)| {
            if !algebra {
                return needs_algebra(name);
            }
            let mut w = Vec::new();
            for &a in f.events() {
                for &b in f.events() {
                    let (hi, lo) = build(a, b);
                    let (h, l) = (
                        f.index_of(hi).expect("closed"),
                        f.index_of(lo).expect("closed"),
                    );
                    if !self.weakly_above(h, l) {
                        w.push(Witness::events("not-weakly-above", [a, b]));
                    }
                }
            }
            AxiomReport::from_witnesses(name, w)
        };
        reports.push(pairwise("UNION-MONO", |a, b| (a.union(b), a)));
        reports.push(pairwise("INTERSECTION-MONO", |a, b| (a, a.intersection(b))));

        reports.push(axioms::asymmetry("ASA", f, self));
        reports.push(axioms::inclusion_monotone("IMA", f, self));

        let axioms_now = self.check_axioms(true);
        let eca = report::find(&axioms_now, "ECA").expect("ECA");
        reports.push(if eca.passed() {
            struct Weak<'a>(&'a ProbabilityStructure);
            impl EventOrder for Weak<'_> {
                fn above(&self, a: usize, b: usize) -> bool {
                    self.0.weakly_above(a, b)
                }
                fn same(&self, a: usize, b: usize) -> bool {
                    self.0.same(a, b)
                }
            }
            axioms::additivity("WEAK-ADDITIVITY", f, &Weak(self), false)
        } else {
            AxiomReport::undetermined("WEAK-ADDITIVITY", "structure is not rigid")
        });

        reports.push(if self.completeness().is_total() {
            let mut w = Vec::new();
            for a in 0..f.len() {
                for b in a + 1..f.len() {
                    if !self.weakly_above(a, b) && !self.weakly_above(b, a) {
                        w.push(Witness::events("incomparable", [f.event(a), f.event(b)]));
                    }
                }
            }
            AxiomReport::from_witnesses("PCTA", w)
        } else {
            AxiomReport::undetermined("PCTA", "structure is not complete")
        });

        reports.push(axioms::monotone("HOM", f, self));
        reports
    }

    /// Searches for `P(A) ≻ P(B)` with `P(Aᶜ) ≻ P(Bᶜ)`; the first such pair in
    /// canonical order is returned.
    pub fn check_pca(&self) -> Result<PcaOutcome, StructureError> {
        let f = &self.family;
        let comp: Option<Vec<usize>> = f
            .events()
            .iter()
            .map(|e| f.index_of(e.complement()))
            .collect();
        let comp = comp.ok_or(StructureError::NotComplementClosed)?;
        for a in 0..f.len() {
            for b in 0..f.len() {
                if self.above(a, b) && self.above(comp[a], comp[b]) {
                    return Ok(PcaOutcome::Counterexample(f.event(a), f.event(b)));
                }
            }
        }
        Ok(PcaOutcome::Holds)
    }
}

/// Backtracking search for a bijection `xs → ys` that is componentwise `≽`
/// with at least one strict component.
fn dominating_matching(
    xs: &[usize],
    ys: &[usize],
    at: usize,
    strict_seen: bool,
    used: &mut [bool],
    weak: &impl Fn(usize, usize) -> bool,
) -> bool {
    if at == xs.len() {
        return strict_seen;
    }
    for j in 0..ys.len() {
        if !used[j] && weak(xs[at], ys[j]) {
            used[j] = true;
            let found =
                dominating_matching(xs, ys, at + 1, strict_seen || xs[at] != ys[j], used, weak);
            used[j] = false;
            if found {
                return true;
            }
        }
    }
    false
}

/// Free-function forms matching the checker names used elsewhere.
pub fn check_structure_axioms(p: &ProbabilityStructure, include_eca: bool) -> Vec<AxiomReport> {
    p.check_axioms(include_eca)
}

pub fn classify(p: &ProbabilityStructure) -> StructureClass {
    p.classify()
}

pub fn substructure_check(
    p: &ProbabilityStructure,
    q: &ProbabilityStructure,
    mode: SubstructureMode,
) -> Result<AxiomReport, StructureError> {
    p.substructure_of(q, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::{power_set, Universe};
    use crate::report::find;

    fn constant(width: usize) -> ProbabilityStructure {
        let f = EventFamily::power_set_of_width(width).unwrap();
        let s = Scale::chain(vec!["x".into()]);
        let n = f.len();
        ProbabilityStructure::new(f, s, vec![0; n]).unwrap()
    }

    #[test]
    fn constant_assignment_fails_pna_only_strictly() {
        let p = constant(2);
        let r = p.check_axioms(true);
        assert!(find(&r, "PNA").unwrap().failed());
        assert!(find(&r, "ICA").unwrap().passed());
        let rel = p.induced_relation();
        assert_eq!(rel.strict_pairs().count(), 0);
        assert_eq!(rel.equiv_pairs().count(), 6);
    }

    #[test]
    fn ica_failure_names_the_inclusion() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = power_set(&u);
        let s = Scale::chain(vec!["0".into(), "1".into(), "2".into()]);
        let a = u.event(["a"]).unwrap();
        let b = u.event(["b"]).unwrap();
        let ab = u.full_event();
        let p = ProbabilityStructure::from_labels(
            f,
            s,
            [(u.empty_event(), "0"), (a, "2"), (b, "1"), (ab, "1")],
        )
        .unwrap();
        let ica = find(&p.check_axioms(false), "ICA").unwrap().clone();
        assert!(ica
            .witnesses()
            .contains(&Witness::events("inclusion", [ab, a])));
        let hom = find(&p.verify_consequences(), "HOM").unwrap().clone();
        assert_eq!(hom.witnesses(), ica.witnesses());
    }

    #[test]
    fn two_class_chain_induces_single_pair() {
        let u = Universe::new(["a"]).unwrap();
        let f = EventFamily::new(1, [u.empty_event(), u.full_event()]).unwrap();
        let s = Scale::chain(vec!["low".into(), "high".into()]);
        let p = ProbabilityStructure::from_labels(
            f,
            s,
            [(u.empty_event(), "low"), (u.full_event(), "high")],
        )
        .unwrap();
        let rel = p.induced_relation();
        assert_eq!(
            rel.strict_pairs().collect::<Vec<_>>(),
            vec![(u.full_event(), u.empty_event())]
        );
        assert_eq!(rel.equiv_pairs().count(), 0);
    }

    #[test]
    fn total_flag_and_missing_singletons() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = EventFamily::new(
            2,
            [u.empty_event(), u.event(["a"]).unwrap(), u.full_event()],
        )
        .unwrap();
        let s = Scale::chain(vec!["0".into(), "1".into()]);
        let p = ProbabilityStructure::new(f, s, vec![0, 1, 1]).unwrap();
        let c = p.classify();
        assert!(!c.total);
        assert_eq!(c.elementary, None);
        assert!(!c.notes.is_empty());
    }

    #[test]
    fn antichain_image_is_not_complete() {
        let f = EventFamily::power_set_of_width(1).unwrap();
        let s = Scale::build(["x", "y"], &[], &[]).unwrap();
        let p = ProbabilityStructure::new(f, s, vec![0, 1]).unwrap();
        assert!(!p.classify().complete);
        assert!(find(&p.verify_consequences(), "PCTA")
            .unwrap()
            .note()
            .is_some());
    }

    #[test]
    fn substructure_errors_and_identity() {
        let p = constant(2);
        assert!(p
            .substructure_of(&p, SubstructureMode::Plain)
            .unwrap()
            .passed());
        assert!(p
            .substructure_of(&p, SubstructureMode::Robust)
            .unwrap()
            .passed());
        let q = constant(1);
        assert_eq!(
            p.substructure_of(&q, SubstructureMode::Plain),
            Err(StructureError::NotSubfamily)
        );
        let f = EventFamily::power_set_of_width(2).unwrap();
        let other =
            ProbabilityStructure::new(f, Scale::chain(vec!["y".into()]), vec![0; 4]).unwrap();
        assert_eq!(
            p.substructure_of(&other, SubstructureMode::Plain),
            Err(StructureError::ScaleMismatch)
        );
    }

    #[test]
    fn reversed_pair_breaks_plain_substructure() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = power_set(&u);
        let s = Scale::chain(vec!["0".into(), "1".into(), "2".into(), "3".into()]);
        let (a, b) = (u.event(["a"]).unwrap(), u.event(["b"]).unwrap());
        let p = ProbabilityStructure::from_labels(
            f.clone(),
            s.clone(),
            [
                (u.empty_event(), "0"),
                (a, "1"),
                (b, "2"),
                (u.full_event(), "3"),
            ],
        )
        .unwrap();
        let q = ProbabilityStructure::from_labels(
            f,
            s,
            [
                (u.empty_event(), "0"),
                (a, "2"),
                (b, "1"),
                (u.full_event(), "3"),
            ],
        )
        .unwrap();
        let r = p.substructure_of(&q, SubstructureMode::Plain).unwrap();
        assert!(r
            .witnesses()
            .contains(&Witness::events("strict-only-in-second", [a, b])));
        assert!(r
            .witnesses()
            .contains(&Witness::events("strict-only-in-first", [b, a])));
    }

    #[test]
    fn pca_requires_complements() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = EventFamily::new(2, [u.empty_event(), u.event(["a"]).unwrap()]).unwrap();
        let p = ProbabilityStructure::new(f, Scale::chain(vec!["x".into()]), vec![0, 0]).unwrap();
        assert_eq!(p.check_pca(), Err(StructureError::NotComplementClosed));
        assert_eq!(constant(2).check_pca(), Ok(PcaOutcome::Holds));
    }

    #[test]
    fn pca_counterexample_on_non_rigid_structure() {
        // {a} ≻ {b} and {b c} ≻ {a c}: PAA fails, PCA fails
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let f = power_set(&u);
        let s = Scale::chain((0..8).map(|i| alloc::format!("v{i}")).collect());
        let label = |names: &[&str]| -> (Event, String) {
            let e = u.event(names.iter().copied()).unwrap();
            let v = match names {
                [] => 0,
                ["b"] => 1,
                ["a"] => 2,
                ["c"] => 3,
                ["a", "b"] => 4,
                ["a", "c"] => 5,
                ["b", "c"] => 6,
                _ => 7,
            };
            (e, alloc::format!("v{v}"))
        };
        let entries = [
            label(&[]),
            label(&["a"]),
            label(&["b"]),
            label(&["c"]),
            label(&["a", "b"]),
            label(&["a", "c"]),
            label(&["b", "c"]),
            label(&["a", "b", "c"]),
        ];
        let p = ProbabilityStructure::from_labels(f, s, entries).unwrap();
        // complements of {a} and {b} are {b c} and {a c}
        assert!(matches!(
            p.check_pca(),
            Ok(PcaOutcome::Counterexample(_, _))
        ));
    }
}
