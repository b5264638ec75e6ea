//! Scale maps, representations between structures, and numeric
//! representations of inflated probabilities, elementary structures and
//! comparative relations.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::event::{Event, Universe};
use crate::numeric::{NumericProbability, WeightMode};
use crate::rational::Rational;
use crate::relation::ComparativeRelation;
use crate::report::{AxiomReport, Witness};
use crate::scale::Scale;
use crate::simplex::{Constraint, LinearProgram, LpOutcome, Sense};
use crate::structure::ProbabilityStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("mapping has {got} entries for {expected} source classes")]
    MapLength { expected: usize, got: usize },
    #[error("class {0} is not in the target scale")]
    UnknownTargetClass(usize),
    #[error("the structures are over different families")]
    FamilyMismatch,
    #[error("the map's scales differ from the structures' scales")]
    ScaleMismatch,
    #[error("not an inflated probability: {0} does not pass")]
    NotInflated(&'static str),
    #[error("P(Ω) = 0; deflation is undefined")]
    ZeroTotal,
    #[error("the structure is not total")]
    NotTotal,
    #[error("the structure is not elementary")]
    NotElementary,
    #[error("every singleton is as probable as the empty event")]
    DegenerateScale,
    #[error("{0:?} and {1:?} share a scale class but receive different values")]
    IllDefinedMap(Event, Event),
    #[error("scale class `{0}` is assigned to no event")]
    UnmappedClass(String),
}

/// A total function from the classes of `source` to the classes of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleMap {
    source: Scale,
    target: Scale,
    mapping: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapRequirement {
    Homomorphism,
    Monomorphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// `p(x) = i/n` with `n = Σ i·nᵢ`.
    Standard,
    /// `p(x) = 2i/m` with `m = Σ 2i·nᵢ`.
    Doubled,
}

/// A numeric target with its scale map and recomputed checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationResult {
    pub target: NumericProbability,
    pub map: ScaleMap,
    pub verification: Vec<AxiomReport>,
}

/// Answer of [`decide_representability`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representability {
    /// Singleton weights extended additively over the power set, and the
    /// optimal slack.
    Representable {
        witness: NumericProbability,
        slack: Rational,
    },
    NotRepresentable(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The closure is cyclic; the failing weak-order report.
    Cyclic(AxiomReport),
    /// No weights satisfy the equalities (`None`) or the best strict slack is
    /// not positive.
    Infeasible(Option<Rational>),
}

impl ScaleMap {
    pub fn new(
        source: Scale,
        target: Scale,
        mapping: Vec<usize>,
    ) -> Result<Self, RepresentationError> {
        if mapping.len() != source.class_count() {
            return Err(RepresentationError::MapLength {
                expected: source.class_count(),
                got: mapping.len(),
            });
        }
        if let Some(&bad) = mapping.iter().find(|&&c| c >= target.class_count()) {
            return Err(RepresentationError::UnknownTargetClass(bad));
        }
        Ok(ScaleMap {
            source,
            target,
            mapping,
        })
    }

    pub fn identity(scale: Scale) -> Self {
        let mapping = (0..scale.class_count()).collect();
        ScaleMap {
            source: scale.clone(),
            target: scale,
            mapping,
        }
    }

    pub fn source(&self) -> &Scale {
        &self.source
    }

    pub fn target(&self) -> &Scale {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Image class of a source class.
    pub fn apply(&self, class: usize) -> usize {
        self.mapping[class]
    }

    /// Image class of a source label index.
    pub fn apply_label(&self, label: usize) -> usize {
        self.mapping[self.source.class_of(label)]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ScaleMap) -> Result<ScaleMap, RepresentationError> {
        if next.source != self.target {
            return Err(RepresentationError::ScaleMismatch);
        }
        let mapping = self.mapping.iter().map(|&c| next.mapping[c]).collect();
        Ok(ScaleMap {
            source: self.source.clone(),
            target: next.target.clone(),
            mapping,
        })
    }

    /// HOMOMORPHISM: `a ≻ b ⇒ f(a) ≻ f(b)` on classes. MONOMORPHISM adds
    /// injectivity. Witnesses name classes by their least label.
    pub fn check(&self, require: MapRequirement) -> AxiomReport {
        let src = self.source.order();
        let tgt = self.target.order();
        let k = self.source.class_count();
        let name = |c: usize| self.source.class_name(c).to_string();
        let mut witnesses = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if src.class_above(a, b) && !tgt.class_above(self.mapping[a], self.mapping[b]) {
                    witnesses.push(Witness::elements("order-not-preserved", [name(a), name(b)]));
                }
            }
        }
        let axiom = match require {
            MapRequirement::Homomorphism => "HOMOMORPHISM",
            MapRequirement::Monomorphism => {
                for a in 0..k {
                    for b in a + 1..k {
                        if self.mapping[a] == self.mapping[b] {
                            witnesses.push(Witness::elements("not-injective", [name(a), name(b)]));
                        }
                    }
                }
                "MONOMORPHISM"
            }
        };
        AxiomReport::from_witnesses(axiom, witnesses)
    }
}

pub fn check_scale_map(f: &ScaleMap, require: MapRequirement) -> AxiomReport {
    f.check(require)
}

/// COMMUTES: `f(P(e)) = Q(e)` for every event, with `[e, P(e), Q(e)]` as
/// witness terms.
fn commutes(p: &ProbabilityStructure, q: &ProbabilityStructure, f: &ScaleMap) -> AxiomReport {
    let mut witnesses = Vec::new();
    for (i, &e) in p.family().events().iter().enumerate() {
        let lp = p.assignment()[i];
        let lq = q.assignment()[i];
        if f.apply_label(lp) != q.scale().class_of(lq) {
            witnesses.push(Witness {
                terms: vec![
                    e.into(),
                    crate::report::Term::Element(p.scale().label(lp).into()),
                    crate::report::Term::Element(q.scale().label(lq).into()),
                ],
                clause: "diagram-does-not-commute",
            });
        }
    }
    AxiomReport::from_witnesses("COMMUTES", witnesses)
}

/// REPRESENTATION: the diagram commutes and `f` is a homomorphism (a
/// monomorphism when `faithful`). Witness clauses come from the parts.
pub fn check_representation(
    p: &ProbabilityStructure,
    q: &ProbabilityStructure,
    f: &ScaleMap,
    faithful: bool,
) -> Result<AxiomReport, RepresentationError> {
    if p.family() != q.family() {
        return Err(RepresentationError::FamilyMismatch);
    }
    if f.source() != p.scale() || f.target() != q.scale() {
        return Err(RepresentationError::ScaleMismatch);
    }
    let require = if faithful {
        MapRequirement::Monomorphism
    } else {
        MapRequirement::Homomorphism
    };
    let mut witnesses = commutes(p, q, f).witnesses().to_vec();
    witnesses.extend_from_slice(f.check(require).witnesses());
    Ok(AxiomReport::from_witnesses("REPRESENTATION", witnesses))
}

/// Maps each class of `p`'s scale to the chain class of the common target
/// value of its events.
fn value_map(
    p: &ProbabilityStructure,
    target: &NumericProbability,
) -> Result<(ScaleMap, ProbabilityStructure), RepresentationError> {
    let q = target.as_structure();
    let scale = p.scale();
    let mut mapping: Vec<Option<(usize, Event)>> = vec![None; scale.class_count()];
    for (i, &e) in p.family().events().iter().enumerate() {
        let class = p.class(i);
        let image = q.scale().class_of(q.assignment()[i]);
        match mapping[class] {
            None => mapping[class] = Some((image, e)),
            Some((seen, first)) if seen != image => {
                return Err(RepresentationError::IllDefinedMap(first, e))
            }
            Some(_) => {}
        }
    }
    let mapping = mapping
        .into_iter()
        .enumerate()
        .map(|(c, m)| {
            m.map(|(image, _)| image)
                .ok_or_else(|| RepresentationError::UnmappedClass(scale.class_name(c).into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = ScaleMap::new(scale.clone(), q.scale().clone(), mapping)?;
    Ok((map, q))
}

/// `Q(A) = P(A)/P(Ω)` for an inflated probability, with the map sending the
/// label of `v` to the label of `v/P(Ω)`.
pub fn deflate(n: &NumericProbability) -> Result<RepresentationResult, RepresentationError> {
    if let Some(r) = n.check_inflated().iter().find(|r| !r.passed()) {
        return Err(RepresentationError::NotInflated(r.axiom));
    }
    let k = n.total().expect("UP passed").clone();
    if k.is_zero() {
        return Err(RepresentationError::ZeroTotal);
    }
    let values = n.values().iter().map(|v| v / &k).collect();
    let target = NumericProbability::new(n.family().clone(), values, 1).expect("same family");
    let p = n.as_structure();
    let (map, q) = value_map(&p, &target)?;
    let mut verification = target.check_kolmogorov();
    verification.push(map.check(MapRequirement::Monomorphism));
    verification.push(commutes(&p, &q, &map));
    Ok(RepresentationResult {
        target,
        map,
        verification,
    })
}

/// Numeric representation of a total elementary structure: singleton
/// classes numbered `1..r` along a linear extension (those level with `∅`
/// get `0`), weights `i/n` (or `2i/m`), extended additively.
pub fn represent_elementary(
    p: &ProbabilityStructure,
    scaling: Scaling,
) -> Result<RepresentationResult, RepresentationError> {
    let class = p.classify();
    if !class.total {
        return Err(RepresentationError::NotTotal);
    }
    if class.elementary != Some(true) {
        return Err(RepresentationError::NotElementary);
    }
    let f = p.family();
    let width = f.width();
    let index = |e: Event| f.index_of(e).expect("power set");
    let empty_class = p.class(index(f.empty_event()));
    let singleton_class: Vec<usize> = (0..width)
        .map(|u| p.class(index(Event::singleton(width, u))))
        .collect();

    let mut level = vec![0u64; p.scale().class_count()];
    let mut next = 1;
    for c in p.scale().linear_extension().classes {
        if c != empty_class && singleton_class.contains(&c) {
            level[c] = next;
            next += 1;
        }
    }
    let factor = match scaling {
        Scaling::Standard => 1,
        Scaling::Doubled => 2,
    };
    let numerators: Vec<u64> = singleton_class.iter().map(|&c| factor * level[c]).collect();
    let total: u64 = numerators.iter().sum();
    if total == 0 {
        return Err(RepresentationError::DegenerateScale);
    }
    let denominator = Rational::from_integer(total as i64);
    let weights: Vec<Rational> = numerators
        .iter()
        .map(|&x| &Rational::from_integer(x as i64) / &denominator)
        .collect();
    let universe = Universe::numbered(width).expect("width within bounds");
    let target = NumericProbability::from_weights(&universe, &weights, WeightMode::Raw)
        .expect("non-negative weights");
    let (map, q) = value_map(p, &target)?;
    let mut verification = target.check_kolmogorov();
    verification.push(map.check(MapRequirement::Homomorphism));
    verification.push(commutes(p, &q, &map));
    Ok(RepresentationResult {
        target,
        map,
        verification,
    })
}

/// Decides whether singleton weights `p ≥ 0`, `Σ p = 1` exist whose additive
/// extension orders the relation's closure: strictly on `≻`, with equality
/// on `≍`. Incomparable events may be ordered either way.
///
/// Maximizes a common slack `δ ≤ 1` on the covering pairs of the closure;
/// the relation is representable iff the optimum is positive. A cyclic
/// closure is rejected without solving.
pub fn decide_representability(r: &ComparativeRelation) -> Representability {
    let closure = r.closure();
    if !closure.is_acyclic() {
        let woa = r.check_de_finetti().remove(0);
        return Representability::NotRepresentable(Certificate::Cyclic(woa));
    }
    let f = r.family();
    let width = f.width();
    let vars = width + 1;
    let delta = width;
    let difference = |a: Event, b: Event| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); vars];
        for u in a.members() {
            row[u] += &Rational::one();
        }
        for v in b.members() {
            row[v] -= &Rational::one();
        }
        row
    };
    let mut constraints = Vec::new();
    let mut sum = vec![Rational::one(); vars];
    sum[delta] = Rational::zero();
    constraints.push(Constraint {
        coeffs: sum,
        sense: Sense::Eq,
        rhs: Rational::one(),
    });
    let mut cap = vec![Rational::zero(); vars];
    cap[delta] = Rational::one();
    constraints.push(Constraint {
        coeffs: cap,
        sense: Sense::Le,
        rhs: Rational::one(),
    });
    let rep = |c: usize| f.event(closure.members(c)[0]);
    for c in 0..closure.class_count() {
        let members = closure.members(c);
        for &m in &members[1..] {
            constraints.push(Constraint {
                coeffs: difference(f.event(m), f.event(members[0])),
                sense: Sense::Eq,
                rhs: Rational::zero(),
            });
        }
        for d in closure.matrix().row(c) {
            // covering pairs suffice: the rest follow by transitivity
            let covered = closure
                .matrix()
                .row(c)
                .any(|e| e != d && closure.class_above(e, d));
            if covered {
                continue;
            }
            let mut row = difference(rep(c), rep(d));
            row[delta] = -Rational::one();
            constraints.push(Constraint {
                coeffs: row,
                sense: Sense::Ge,
                rhs: Rational::zero(),
            });
        }
    }
    let mut objective = vec![Rational::zero(); vars];
    objective[delta] = Rational::one();
    let lp = LinearProgram {
        vars,
        constraints,
        objective,
    };
    match lp.maximize() {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            let universe = Universe::numbered(width).expect("width within bounds");
            let witness =
                NumericProbability::from_weights(&universe, &point[..width], WeightMode::Raw)
                    .expect("solver returns non-negative weights");
            assert!(
                extends_closure(&witness, r),
                "slack-optimal weights must order the closure"
            );
            Representability::Representable {
                witness,
                slack: value,
            }
        }
        LpOutcome::Optimal { value, .. } => {
            Representability::NotRepresentable(Certificate::Infeasible(Some(value)))
        }
        LpOutcome::Infeasible => Representability::NotRepresentable(Certificate::Infeasible(None)),
        LpOutcome::Unbounded => unreachable!("slack is capped at 1"),
    }
}

/// Whether the relation induced by `witness` on `r`'s events contains the
/// closure of `r`.
pub fn extends_closure(witness: &NumericProbability, r: &ComparativeRelation) -> bool {
    let value = |e: Event| witness.value(e);
    let closed = r.closed_pairs();
    closed
        .strict
        .iter()
        .all(|&(a, b)| match (value(a), value(b)) {
            (Some(x), Some(y)) => x > y,
            _ => false,
        })
        && closed
            .equiv
            .iter()
            .all(|&(a, b)| match (value(a), value(b)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::{power_set, EventFamily};
    use crate::report::{all_passed, find};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn chain(labels: &[&str]) -> Scale {
        Scale::chain(labels.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn identity_and_collapsing_maps() {
        let s = Scale::build(["x", "y", "z"], &[("z", "x"), ("z", "y")], &[]).unwrap();
        let id = ScaleMap::identity(s.clone());
        assert!(id.check(MapRequirement::Homomorphism).passed());
        assert!(id.check(MapRequirement::Monomorphism).passed());

        // x and y are incomparable; send both to the bottom of a 2-chain
        let t = chain(&["lo", "hi"]);
        let f = ScaleMap::new(s, t, vec![0, 0, 1]).unwrap();
        assert!(f.check(MapRequirement::Homomorphism).passed());
        let mono = f.check(MapRequirement::Monomorphism);
        assert_eq!(
            mono.witnesses(),
            &[Witness::elements("not-injective", ["x", "y"])]
        );
    }

    #[test]
    fn reversed_chain_pair_fails() {
        let s = chain(&["a", "b"]);
        let f = ScaleMap::new(s.clone(), s, vec![1, 0]).unwrap();
        let h = f.check(MapRequirement::Homomorphism);
        assert_eq!(
            h.witnesses(),
            &[Witness::elements("order-not-preserved", ["b", "a"])]
        );
    }

    #[test]
    fn map_shape_checked() {
        let s = chain(&["a", "b"]);
        assert_eq!(
            ScaleMap::new(s.clone(), s.clone(), vec![0]),
            Err(RepresentationError::MapLength {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            ScaleMap::new(s.clone(), s, vec![0, 2]),
            Err(RepresentationError::UnknownTargetClass(2))
        );
    }

    #[test]
    fn representation_of_self() {
        let u = Universe::new(["a", "b"]).unwrap();
        let n =
            NumericProbability::from_weights(&u, &[r("1"), r("2")], WeightMode::Normalize).unwrap();
        let p = n.as_structure();
        let f = ScaleMap::identity(p.scale().clone());
        assert!(check_representation(&p, &p, &f, true).unwrap().passed());
        let other = chain(&["0"]);
        let g = ScaleMap::new(other.clone(), other, vec![0]).unwrap();
        assert_eq!(
            check_representation(&p, &p, &g, false),
            Err(RepresentationError::ScaleMismatch)
        );
    }

    #[test]
    fn deflate_examples() {
        let u = Universe::new(["a", "b"]).unwrap();
        let n = NumericProbability::from_weights(&u, &[r("1"), r("1")], WeightMode::Raw).unwrap();
        let res = deflate(&n).unwrap();
        assert_eq!(res.target.value(u.event(["a"]).unwrap()), Some(&r("1/2")));
        assert_eq!(res.target.total(), Some(&r("1")));
        assert!(all_passed(&res.verification));
        assert!(find(&res.verification, "MONOMORPHISM").is_some());

        let n =
            NumericProbability::from_weights(&u, &[r("1/3"), r("2/3")], WeightMode::Raw).unwrap();
        let res = deflate(&n).unwrap();
        assert_eq!(res.target, n);
        assert_eq!(res.map.mapping(), &[0, 1, 2, 3]);

        let u3 = Universe::new(["a", "b", "c"]).unwrap();
        let n = NumericProbability::from_weights(&u3, &[r("1"), r("2"), r("3")], WeightMode::Raw)
            .unwrap();
        let res = deflate(&n).unwrap();
        let singles: Vec<_> = (0..3)
            .map(|i| res.target.value(Event::singleton(3, i)).unwrap().clone())
            .collect();
        assert_eq!(singles, vec![r("1/6"), r("1/3"), r("1/2")]);
        assert!(all_passed(&res.verification));
    }

    #[test]
    fn deflate_rejects_zero_total_and_non_inflated() {
        let u = Universe::new(["a"]).unwrap();
        let n = NumericProbability::from_weights(&u, &[r("0")], WeightMode::Raw).unwrap();
        assert_eq!(deflate(&n), Err(RepresentationError::ZeroTotal));
        let f = power_set(&u);
        let n = NumericProbability::from_entries(
            f,
            [(u.empty_event(), r("1")), (u.full_event(), r("1"))],
            1,
        )
        .unwrap();
        assert_eq!(deflate(&n), Err(RepresentationError::NotInflated("LP")));
    }

    fn structure(u: &Universe, levels: &[usize]) -> ProbabilityStructure {
        // event label = sum of singleton levels; a chain of sums
        let f = power_set(u);
        let sums: Vec<usize> = f
            .events()
            .iter()
            .map(|e| e.members().map(|i| levels[i]).sum())
            .collect();
        let mut used = sums.clone();
        used.sort_unstable();
        used.dedup();
        let scale = Scale::chain(used.iter().map(|s| s.to_string()).collect());
        let assignment = sums
            .iter()
            .map(|s| used.binary_search(s).unwrap())
            .collect();
        ProbabilityStructure::new(f, scale, assignment).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        // a ≍ b ≺ c
        let p = structure(&u, &[1, 1, 2]);
        let res = represent_elementary(&p, Scaling::Standard).unwrap();
        let w: Vec<_> = (0..3)
            .map(|i| res.target.value(Event::singleton(3, i)).unwrap().clone())
            .collect();
        assert_eq!(w, vec![r("1/4"), r("1/4"), r("1/2")]);
        assert_eq!(res.target.total(), Some(&r("1")));
        assert!(all_passed(&res.verification));

        let p = structure(&u, &[1, 1, 1]);
        let res = represent_elementary(&p, Scaling::Doubled).unwrap();
        assert_eq!(res.target.value(Event::singleton(3, 0)), Some(&r("1/3")));

        let u2 = Universe::new(["a", "b"]).unwrap();
        let p = structure(&u2, &[0, 1]);
        let res = represent_elementary(&p, Scaling::Standard).unwrap();
        assert_eq!(res.target.value(Event::singleton(2, 0)), Some(&r("0")));
        assert_eq!(res.target.value(Event::singleton(2, 1)), Some(&r("1")));

        let p = structure(&u2, &[0, 0]);
        assert_eq!(
            represent_elementary(&p, Scaling::Standard),
            Err(RepresentationError::DegenerateScale)
        );
    }

    #[test]
    fn elementary_preconditions() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = EventFamily::new(2, [u.empty_event(), u.full_event()]).unwrap();
        let p = ProbabilityStructure::new(f, chain(&["0", "1"]), vec![0, 1]).unwrap();
        assert_eq!(
            represent_elementary(&p, Scaling::Standard),
            Err(RepresentationError::NotTotal)
        );
    }

    fn relation(u: &Universe, strict: &[(&[&str], &[&str])]) -> ComparativeRelation {
        let pairs: Vec<_> = strict
            .iter()
            .map(|(a, b)| {
                (
                    u.event(a.iter().copied()).unwrap(),
                    u.event(b.iter().copied()).unwrap(),
                )
            })
            .collect();
        ComparativeRelation::new(power_set(u), pairs, []).unwrap()
    }

    #[test]
    fn decide_small_relations() {
        let u = Universe::new(["a", "b"]).unwrap();
        let rel = relation(&u, &[(&["a"], &["b"]), (&["b"], &[])]);
        match decide_representability(&rel) {
            Representability::Representable { witness, slack } => {
                assert!(extends_closure(&witness, &rel));
                assert_eq!(slack, r("1/3"));
            }
            other => panic!("{other:?}"),
        }

        // {a} ≻ {b} and {b} ≻ {a} through a cycle
        let rel = relation(&u, &[(&["a"], &["b"]), (&["b"], &["a"])]);
        assert!(matches!(
            decide_representability(&rel),
            Representability::NotRepresentable(Certificate::Cyclic(_))
        ));

        // ∅ ≻ {a}: no non-negative weights do that
        let rel = relation(&u, &[(&[], &["a"])]);
        assert!(matches!(
            decide_representability(&rel),
            Representability::NotRepresentable(Certificate::Infeasible(Some(_)))
        ));
    }

    #[test]
    fn decide_empty_universe() {
        let f = EventFamily::new(0, [Event::empty(0)]).unwrap();
        let rel = ComparativeRelation::new(f, [], []).unwrap();
        assert_eq!(
            decide_representability(&rel),
            Representability::NotRepresentable(Certificate::Infeasible(None))
        );
    }
}
