//! Axiom reports shared by every checker.

use alloc::string::String;
use alloc::vec::Vec;

use crate::event::Event;

/// One component of a counterexample: an event or a scale element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Event(Event),
    Element(String),
}

impl From<Event> for Term {
    fn from(e: Event) -> Self {
        Term::Event(e)
    }
}

/// A counterexample tuple and the clause of the axiom it violates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub terms: Vec<Term>,
    pub clause: &'static str,
}

impl Witness {
    pub fn events(clause: &'static str, events: impl IntoIterator<Item = Event>) -> Self {
        Witness {
            terms: events.into_iter().map(Term::Event).collect(),
            clause,
        }
    }

    pub fn elements<S: Into<String>>(
        clause: &'static str,
        elements: impl IntoIterator<Item = S>,
    ) -> Self {
        Witness {
            terms: elements
                .into_iter()
                .map(|s| Term::Element(s.into()))
                .collect(),
            clause,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not run; `AxiomReport::note` says why.
    Undetermined,
}

/// Outcome of checking one axiom.
///
/// The verdict is derived: `Fail` iff there are witnesses, `Undetermined` iff
/// the check was skipped with a note, `Pass` otherwise. Witnesses are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    witnesses: Vec<Witness>,
    note: Option<String>,
}

impl AxiomReport {
    pub fn from_witnesses(axiom: &'static str, mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort();
        witnesses.dedup();
        AxiomReport {
            axiom,
            witnesses,
            note: None,
        }
    }

    pub fn pass(axiom: &'static str) -> Self {
        Self::from_witnesses(axiom, Vec::new())
    }

    pub fn undetermined(axiom: &'static str, note: impl Into<String>) -> Self {
        AxiomReport {
            axiom,
            witnesses: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn verdict(&self) -> Verdict {
        if !self.witnesses.is_empty() {
            Verdict::Fail
        } else if self.note.is_some() {
            Verdict::Undetermined
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict() == Verdict::Fail
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }
}

/// Finds the report for `axiom` in a checker's output.
pub fn find<'a>(reports: &'a [AxiomReport], axiom: &str) -> Option<&'a AxiomReport> {
    reports.iter().find(|r| r.axiom == axiom)
}

/// True when no report in the list failed. Undetermined reports do not count
/// as failures.
pub fn none_failed(reports: &[AxiomReport]) -> bool {
    reports.iter().all(|r| !r.failed())
}

/// True when every report passed.
pub fn all_passed(reports: &[AxiomReport]) -> bool {
    reports.iter().all(AxiomReport::passed)
}
