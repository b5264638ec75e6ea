//! Finite qualitative probability.
//!
//! Events are subsets of a universe of at most [`MAX_UNIVERSE`] elements.
//! Probability values live on a partially ordered scale; comparative
//! relations, numeric probabilities and the maps between them are checked
//! against their axioms with explicit counterexamples.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod axioms;
pub mod event;
pub mod numeric;
pub mod rational;
pub mod relation;
pub mod report;
pub mod representation;
pub mod scale;
pub mod simplex;
pub mod structure;

pub use event::{
    check_family, close_family, combine, is_set_algebra, power_set, ClosureMode, Event, EventError,
    EventFamily, FamilyAxiom, SetOp, Universe, MAX_UNIVERSE,
};
pub use numeric::{NumericError, NumericProbability, WeightMode};
pub use rational::{Rational, RationalParseError};
pub use relation::{structure_from_relation, ClosedPairs, ComparativeRelation, RelationError};
pub use report::{AxiomReport, Term, Verdict, Witness};
pub use representation::{
    check_representation, check_scale_map, decide_representability, deflate, extends_closure,
    represent_elementary, Certificate, MapRequirement, Representability, RepresentationError,
    RepresentationResult, ScaleMap, Scaling,
};
pub use scale::{LinearExtension, Relation, Scale, ScaleError, Totality};
pub use structure::{
    check_structure_axioms, classify, substructure_check, PcaOutcome, ProbabilityStructure,
    StructureClass, StructureError, SubstructureMode,
};
