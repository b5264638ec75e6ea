//! Exact-rational probability functions: classical (Kolmogorov) and inflated.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::event::{check_family, power_set, Event, EventFamily, FamilyAxiom, Universe};
use crate::rational::Rational;
use crate::report::{AxiomReport, Witness};
use crate::scale::Scale;
use crate::structure::ProbabilityStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("{got} values for a family of {expected} events")]
    ValueCount { expected: usize, got: usize },
    #[error("event {0:?} has no value")]
    Unvalued(Event),
    #[error("event {0:?} is not in the family")]
    EventNotInFamily(Event),
    #[error("event {0:?} is valued twice")]
    DuplicateValue(Event),
    #[error("{got} weights for a universe of {expected} elements")]
    WeightCount { expected: usize, got: usize },
    #[error("weight {0} of element {1} is negative")]
    NegativeWeight(Rational, usize),
    #[error("weights sum to zero and cannot be normalized")]
    ZeroTotal,
    #[error("the bound must be a positive integer")]
    ZeroBound,
}

/// A total mapping from family events to exact rationals, with a declared
/// positive integer bound `m` (1 for classical probabilities).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericProbability {
    family: EventFamily,
    values: Vec<Rational>,
    bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Use the weights as given.
    Raw,
    /// Divide by the total so that `P(Ω) = 1`.
    Normalize,
}

impl NumericProbability {
    /// `values[i]` is the value of `family.event(i)`.
    pub fn new(
        family: EventFamily,
        values: Vec<Rational>,
        bound: u64,
    ) -> Result<Self, NumericError> {
        if values.len() != family.len() {
            return Err(NumericError::ValueCount {
                expected: family.len(),
                got: values.len(),
            });
        }
        if bound == 0 {
            return Err(NumericError::ZeroBound);
        }
        Ok(NumericProbability {
            family,
            values,
            bound,
        })
    }

    pub fn from_entries(
        family: EventFamily,
        entries: impl IntoIterator<Item = (Event, Rational)>,
        bound: u64,
    ) -> Result<Self, NumericError> {
        let mut values: Vec<Option<Rational>> = vec![None; family.len()];
        for (e, v) in entries {
            let i = family
                .index_of(e)
                .ok_or(NumericError::EventNotInFamily(e))?;
            if values[i].replace(v).is_some() {
                return Err(NumericError::DuplicateValue(e));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(NumericError::Unvalued(family.event(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(family, values, bound)
    }

    /// The additive extension of per-element weights over the power set.
    ///
    /// In raw mode the bound is the smallest positive integer `≥ P(Ω)`.
    pub fn from_weights(
        universe: &Universe,
        weights: &[Rational],
        mode: WeightMode,
    ) -> Result<Self, NumericError> {
        if weights.len() != universe.len() {
            return Err(NumericError::WeightCount {
                expected: universe.len(),
                got: weights.len(),
            });
        }
        let family = power_set(universe);
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(NumericError::NegativeWeight(w.clone(), i));
        }
        let total: Rational = weights.iter().sum();
        let scaled: Vec<Rational> = match mode {
            WeightMode::Raw => weights.to_vec(),
            WeightMode::Normalize => {
                if total.is_zero() {
                    return Err(NumericError::ZeroTotal);
                }
                weights.iter().map(|w| w / &total).collect()
            }
        };
        let values = family
            .events()
            .iter()
            .map(|e| e.members().map(|i| &scaled[i]).sum())
            .collect();
        let bound = match mode {
            WeightMode::Normalize => 1,
            WeightMode::Raw => ceil_positive(&total),
        };
        Self::new(family, values, bound)
    }

    pub fn family(&self) -> &EventFamily {
        &self.family
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn value(&self, event: Event) -> Option<&Rational> {
        self.family.index_of(event).map(|i| &self.values[i])
    }

    /// `P(Ω)`, if `Ω` is permissible.
    pub fn total(&self) -> Option<&Rational> {
        self.value(self.family.universe_event())
    }

    pub fn with_bound(mut self, bound: u64) -> Result<Self, NumericError> {
        if bound == 0 {
            return Err(NumericError::ZeroBound);
        }
        self.bound = bound;
        Ok(self)
    }

    /// The smallest positive integer `≥ P(Ω)`, or 1 when `Ω` is not
    /// permissible.
    pub fn least_bound(&self) -> u64 {
        self.total().map_or(1, ceil_positive)
    }

    /// Restricts to a subfamily.
    pub fn restrict(&self, subfamily: &EventFamily) -> Result<Self, NumericError> {
        let values = subfamily
            .events()
            .iter()
            .map(|&e| {
                self.value(e)
                    .cloned()
                    .ok_or(NumericError::EventNotInFamily(e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(subfamily.clone(), values, self.bound)
    }

    fn non_negative(&self, name: &'static str) -> AxiomReport {
        let w = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(i, _)| Witness::events("negative", [self.family.event(i)]))
            .collect();
        AxiomReport::from_witnesses(name, w)
    }

    fn additive(&self, name: &'static str) -> AxiomReport {
        let mut w = Vec::new();
        let events = self.family.events();
        for (i, &a) in events.iter().enumerate() {
            for (j, &b) in events.iter().enumerate().skip(i) {
                if !a.is_disjoint_from(b) {
                    continue;
                }
                if let Some(k) = self.family.index_of(a.union(b)) {
                    if self.values[k] != &self.values[i] + &self.values[j] {
                        w.push(Witness::events("not-additive", [a, b]));
                    }
                }
            }
        }
        AxiomReport::from_witnesses(name, w)
    }

    /// K1 (non-negativity), K2 (`P(Ω) = 1`), K3 (finite additivity over
    /// disjoint pairs whose union is permissible).
    pub fn check_kolmogorov(&self) -> Vec<AxiomReport> {
        let omega = self.family.universe_event();
        let k2 = match self.total() {
            None => AxiomReport::undetermined("K2", "the sure event is not permissible"),
            Some(t) if *t == Rational::one() => AxiomReport::pass("K2"),
            Some(_) => AxiomReport::from_witnesses("K2", vec![Witness::events("not-one", [omega])]),
        };
        vec![self.non_negative("K1"), k2, self.additive("K3")]
    }

    /// AS (set algebra with `Ω`), UP (`0 ≤ P(Ω) ≤ m`), NN (every value
    /// non-negative), LP (`P(∅) = 0`) and FA (finite additivity).
    pub fn check_inflated(&self) -> Vec<AxiomReport> {
        let sip2 = check_family(&self.family, FamilyAxiom::Sip2);
        let as_report = AxiomReport::from_witnesses("AS", sip2.witnesses().to_vec());
        let omega = self.family.universe_event();
        let bound = Rational::from_integer(self.bound as i64);
        let up = match self.total() {
            None => AxiomReport::undetermined("UP", "the sure event is not permissible"),
            Some(t) if t.is_negative() => {
                AxiomReport::from_witnesses("UP", vec![Witness::events("negative-total", [omega])])
            }
            Some(t) if *t > bound => AxiomReport::from_witnesses(
                "UP",
                vec![Witness {
                    terms: vec![
                        omega.into(),
                        crate::report::Term::Element(self.bound.to_string()),
                    ],
                    clause: "above-bound",
                }],
            ),
            Some(_) => AxiomReport::pass("UP"),
        };
        let empty = self.family.empty_event();
        let lp = match self.value(empty) {
            None => AxiomReport::undetermined("LP", "the empty event is not permissible"),
            Some(v) if v.is_zero() => AxiomReport::pass("LP"),
            Some(_) => {
                AxiomReport::from_witnesses("LP", vec![Witness::events("nonzero-empty", [empty])])
            }
        };
        vec![
            as_report,
            up,
            self.non_negative("NN"),
            lp,
            self.additive("FA"),
        ]
    }

    /// The structure into the chain of distinct values, ascending. Labels
    /// are the values written as rationals.
    pub fn as_structure(&self) -> ProbabilityStructure {
        let mut distinct = self.values.clone();
        distinct.sort();
        distinct.dedup();
        let scale = Scale::chain(distinct.iter().map(|v| v.to_string()).collect());
        let assignment = self
            .values
            .iter()
            .map(|v| distinct.binary_search(v).expect("value is in the image"))
            .collect();
        ProbabilityStructure::new(self.family.clone(), scale, assignment)
            .expect("one label per event")
    }
}

fn ceil_positive(x: &Rational) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let (q, r) = x.numer().div_mod_floor(x.denom());
    let ceil = if r == num_bigint::BigInt::from(0) {
        q
    } else {
        q + 1
    };
    ceil.to_u64().unwrap_or(u64::MAX).max(1)
}

pub fn check_kolmogorov(n: &NumericProbability) -> Vec<AxiomReport> {
    n.check_kolmogorov()
}

pub fn check_inflated(n: &NumericProbability) -> Vec<AxiomReport> {
    n.check_inflated()
}

pub fn as_structure(n: &NumericProbability) -> ProbabilityStructure {
    n.as_structure()
}
