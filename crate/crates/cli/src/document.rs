//! The line-oriented document format.
//!
//! ```text
//! # two coins
//! universe: a b
//! family: powerset
//! assign: {} = 0, {a} = 1/2, {b} = 1/2, {a b} = 1
//! ```
//!
//! Sections are `universe`, `family`, `scale`, `map`, `order`, `assign`,
//! `bound` and `rel`. `universe`, `family`, `scale` and `bound` appear at most
//! once; the others may repeat. `#` starts a comment. Lines may come in any
//! order: the three header sections are read first, then the rest in line
//! order.

use std::fmt;

use qualprob_core::{
    ComparativeRelation, Event, EventFamily, NumericError, NumericProbability,
    ProbabilityStructure, Rational, RationalParseError, Scale, ScaleError, Universe, MAX_UNIVERSE,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("duplicate `{0}` section")]
    DuplicateSection(&'static str),
    #[error("missing `universe` section")]
    MissingUniverse,
    #[error("expected {0}")]
    Syntax(&'static str),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("universe has {0} elements; at most {MAX_UNIVERSE} are supported")]
    UniverseTooLarge(usize),
    #[error("{0}")]
    Rational(RationalParseError),
    #[error("bound must be a positive integer")]
    Bound,
    #[error("`bound` without an `assign` section")]
    BoundWithoutAssign,
    #[error("event {0} is outside the family")]
    OutsideFamily(String),
    #[error("event {0} is listed twice")]
    DuplicateEvent(String),
    #[error("event {0} is valued twice")]
    DuplicateValue(String),
    #[error("event {0} is mapped twice")]
    DuplicateMap(String),
    #[error("`{0}` needs a `scale` section")]
    NoScale(&'static str),
    #[error("duplicate scale label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown scale label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    Order(ScaleError),
    #[error("{0} and {1} are declared both strictly ordered and equivalent")]
    Conflict(String, String),
}

/// Relation symbol of an `order:` line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    /// `a < b`
    Below,
    /// `a ~ b`
    Same,
}

/// `low < high` or `low ~ high`, as label indices. For `~` the smaller
/// index comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderLine {
    pub low: usize,
    pub high: usize,
    pub kind: OrderKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleSection {
    pub labels: Vec<String>,
    /// Sorted, without repeats.
    pub order: Vec<OrderLine>,
    /// `(event, label index)`, sorted by event.
    pub map: Vec<(Event, usize)>,
}

impl ScaleSection {
    pub fn scale(&self) -> Scale {
        build_scale(&self.labels, &self.order).expect("validated on parse")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Sorted by event.
    pub values: Vec<(Event, Rational)>,
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSection {
    /// `(A, B)` for `A > B`, sorted.
    pub strict: Vec<(Event, Event)>,
    /// `(A, B)` for `A ~ B` with `A < B` canonically, sorted.
    pub equiv: Vec<(Event, Event)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub universe: Universe,
    /// `None` is the power set.
    pub family: Option<EventFamily>,
    pub scale: Option<ScaleSection>,
    pub assignment: Option<Assignment>,
    pub relation: Option<RelationSection>,
}

impl Document {
    pub fn new(universe: Universe) -> Self {
        Document {
            universe,
            family: None,
            scale: None,
            assignment: None,
            relation: None,
        }
    }

    pub fn family(&self) -> EventFamily {
        self.family
            .clone()
            .unwrap_or_else(|| qualprob_core::power_set(&self.universe))
    }

    pub fn render(&self, e: Event) -> String {
        self.universe.render(e)
    }

    /// The structure given by `scale` and `map` lines.
    pub fn labelled_structure(&self) -> Option<Result<ProbabilityStructure, String>> {
        let s = self.scale.as_ref()?;
        let family = self.family();
        if let Some(e) = family
            .events()
            .iter()
            .find(|&&e| s.map.binary_search_by_key(&e, |m| m.0).is_err())
        {
            return Some(Err(format!("event {} has no `map` line", self.render(*e))));
        }
        let entries = s.map.iter().map(|&(e, l)| (e, s.labels[l].as_str()));
        Some(Ok(ProbabilityStructure::from_labels(
            family,
            s.scale(),
            entries,
        )
        .expect("map lines cover the family")))
    }

    /// The numeric function given by `assign` lines. Without a `bound` line
    /// the bound is the least positive integer `≥ P(Ω)`.
    pub fn numeric(&self) -> Option<Result<NumericProbability, String>> {
        let a = self.assignment.as_ref()?;
        let n = match NumericProbability::from_entries(self.family(), a.values.iter().cloned(), 1) {
            Ok(n) => n,
            Err(NumericError::Unvalued(e)) => {
                return Some(Err(format!("event {} has no value", self.render(e))))
            }
            Err(e) => return Some(Err(e.to_string())),
        };
        let bound = a.bound.unwrap_or_else(|| n.least_bound());
        Some(Ok(n.with_bound(bound).expect("bound is positive")))
    }

    pub fn comparative(&self) -> Option<ComparativeRelation> {
        let r = self.relation.as_ref()?;
        Some(
            ComparativeRelation::new(
                self.family(),
                r.strict.iter().copied(),
                r.equiv.iter().copied(),
            )
            .expect("validated on parse"),
        )
    }
}

fn build_scale(labels: &[String], order: &[OrderLine]) -> Result<Scale, ScaleError> {
    let mut strict = Vec::new();
    let mut equiv = Vec::new();
    for o in order {
        match o.kind {
            OrderKind::Below => strict.push((o.high, o.low)),
            OrderKind::Same => equiv.push((o.low, o.high)),
        }
    }
    Scale::from_indices(labels.to_vec(), &strict, &equiv)
}

/// A cursor over the text after a section name.
struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { rest: text.trim() }
    }

    fn is_done(&self) -> bool {
        self.rest.is_empty()
    }

    fn eat(&mut self, token: &str) -> bool {
        match self.rest.strip_prefix(token) {
            Some(r) => {
                self.rest = r.trim_start();
                true
            }
            None => false,
        }
    }

    fn expect(&mut self, token: &str, what: &'static str) -> Result<(), Reason> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Reason::Syntax(what))
        }
    }

    /// A run of characters up to whitespace or one of the reserved ones.
    fn word(&mut self) -> Option<&'a str> {
        let end = self
            .rest
            .find(|c: char| c.is_whitespace() || "{},=<>~#".contains(c))
            .unwrap_or(self.rest.len());
        let end = match self.rest[..end].find("->") {
            Some(i) => i,
            None => end,
        };
        if end == 0 {
            return None;
        }
        let (w, r) = self.rest.split_at(end);
        self.rest = r.trim_start();
        Some(w)
    }

    /// Text up to the next `,` or the end.
    fn item(&mut self) -> &'a str {
        let end = self.rest.find(',').unwrap_or(self.rest.len());
        let (w, r) = self.rest.split_at(end);
        self.rest = r;
        w.trim()
    }

    fn names(&mut self) -> Vec<&'a str> {
        let mut out = Vec::new();
        while let Some(w) = self.word() {
            out.push(w);
        }
        out
    }
}

struct Parser<'u> {
    universe: &'u Universe,
    family: Option<&'u EventFamily>,
}

impl Parser<'_> {
    fn event(&self, c: &mut Cursor) -> Result<Event, Reason> {
        c.expect("{", "`{`")?;
        let names = c.names();
        c.expect("}", "`}`")?;
        let e = self
            .universe
            .event(names.iter().copied())
            .map_err(|e| match e {
                qualprob_core::EventError::UnknownElement(n) => Reason::UnknownElement(n),
                other => Reason::UnknownElement(other.to_string()),
            })?;
        if let Some(f) = self.family {
            if !f.contains(e) {
                return Err(Reason::OutsideFamily(self.universe.render(e)));
            }
        }
        Ok(e)
    }
}

const HEADERS: [&str; 3] = ["universe", "family", "scale"];
const SECTIONS: [&str; 8] = [
    "universe", "family", "scale", "map", "order", "assign", "bound", "rel",
];

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |reason| ParseError { line, reason };
        let (key, rest) = body
            .split_once(':')
            .ok_or(err(Reason::Syntax("`section: …`")))?;
        let key = key.trim();
        let key = SECTIONS
            .iter()
            .copied()
            .find(|&s| s == key)
            .ok_or_else(|| err(Reason::UnknownSection(key.into())))?;
        lines.push((line, key, rest));
    }

    let mut seen: Vec<&str> = Vec::new();
    for &(line, key, _) in &lines {
        if ["universe", "family", "scale", "bound"].contains(&key) {
            if seen.contains(&key) {
                return Err(ParseError {
                    line,
                    reason: Reason::DuplicateSection(key),
                });
            }
            seen.push(key);
        }
    }
    let header = |name| lines.iter().find(|l| l.1 == name).copied();

    let (uline, _, utext) = header("universe").ok_or(ParseError {
        line: 1,
        reason: Reason::MissingUniverse,
    })?;
    let universe = parse_universe(utext).map_err(|reason| ParseError {
        line: uline,
        reason,
    })?;

    let family = match header("family") {
        None => None,
        Some((line, _, text)) => {
            parse_family(&universe, text).map_err(|reason| ParseError { line, reason })?
        }
    };

    let mut scale = match header("scale") {
        None => None,
        Some((line, _, text)) => {
            Some(parse_labels(text).map_err(|reason| ParseError { line, reason })?)
        }
    };

    let parser = Parser {
        universe: &universe,
        family: family.as_ref(),
    };
    let mut values: Vec<(Event, Rational)> = Vec::new();
    let mut bound = None;
    let mut strict: Vec<(Event, Event)> = Vec::new();
    let mut equiv: Vec<(Event, Event)> = Vec::new();
    let mut has_assign = false;
    let mut has_rel = false;

    for &(line, key, text) in &lines {
        if HEADERS.contains(&key) {
            continue;
        }
        let err = |reason| ParseError { line, reason };
        let mut c = Cursor::new(text);
        match key {
            "map" | "order" => {
                let s = scale.as_mut().ok_or(err(Reason::NoScale(key)))?;
                if key == "map" {
                    let e = parser.event(&mut c).map_err(err)?;
                    c.expect("->", "`->`").map_err(err)?;
                    let l = label(s, &mut c).map_err(err)?;
                    finish(&c).map_err(err)?;
                    if s.map.iter().any(|m| m.0 == e) {
                        return Err(err(Reason::DuplicateMap(universe.render(e))));
                    }
                    s.map.push((e, l));
                } else {
                    let a = label(s, &mut c).map_err(err)?;
                    let kind = if c.eat("<") {
                        OrderKind::Below
                    } else if c.eat("~") {
                        OrderKind::Same
                    } else {
                        return Err(err(Reason::Syntax("`<` or `~`")));
                    };
                    let b = label(s, &mut c).map_err(err)?;
                    finish(&c).map_err(err)?;
                    let o = match kind {
                        OrderKind::Below => OrderLine {
                            low: a,
                            high: b,
                            kind,
                        },
                        OrderKind::Same => OrderLine {
                            low: a.min(b),
                            high: a.max(b),
                            kind,
                        },
                    };
                    s.order.push(o);
                    if let Err(e) = build_scale(&s.labels, &s.order) {
                        return Err(err(Reason::Order(e)));
                    }
                }
            }
            "assign" => {
                has_assign = true;
                loop {
                    let mut item = Cursor::new(c.item());
                    let e = parser.event(&mut item).map_err(err)?;
                    item.expect("=", "`=`").map_err(err)?;
                    let v: Rational = item.rest.parse().map_err(|e| err(Reason::Rational(e)))?;
                    if values.iter().any(|x| x.0 == e) {
                        return Err(err(Reason::DuplicateValue(universe.render(e))));
                    }
                    values.push((e, v));
                    if !c.eat(",") {
                        break;
                    }
                }
            }
            "bound" => {
                let m: u64 = text.trim().parse().map_err(|_| err(Reason::Bound))?;
                if m == 0 {
                    return Err(err(Reason::Bound));
                }
                bound = Some((line, m));
            }
            "rel" => {
                has_rel = true;
                let a = parser.event(&mut c).map_err(err)?;
                let is_strict = if c.eat(">") {
                    true
                } else if c.eat("~") {
                    false
                } else {
                    return Err(err(Reason::Syntax("`>` or `~`")));
                };
                let b = parser.event(&mut c).map_err(err)?;
                finish(&c).map_err(err)?;
                let key = (a.min(b), a.max(b));
                let clash = if is_strict {
                    equiv.contains(&key)
                } else {
                    strict.contains(&(a, b)) || strict.contains(&(b, a))
                };
                if clash {
                    return Err(err(Reason::Conflict(
                        universe.render(a),
                        universe.render(b),
                    )));
                }
                if is_strict {
                    strict.push((a, b));
                } else if a != b {
                    equiv.push(key);
                }
            }
            _ => unreachable!("header sections are skipped"),
        }
    }

    if let Some((line, _)) = bound {
        if !has_assign {
            return Err(ParseError {
                line,
                reason: Reason::BoundWithoutAssign,
            });
        }
    }
    if let Some(s) = scale.as_mut() {
        s.order.sort_unstable();
        s.order.dedup();
        s.map.sort_unstable();
    }
    values.sort_by_key(|x| x.0);
    strict.sort_unstable();
    strict.dedup();
    equiv.sort_unstable();
    equiv.dedup();

    Ok(Document {
        universe,
        family,
        scale,
        assignment: has_assign.then(|| Assignment {
            values,
            bound: bound.map(|b| b.1),
        }),
        relation: has_rel.then_some(RelationSection { strict, equiv }),
    })
}

fn finish(c: &Cursor) -> Result<(), Reason> {
    if c.is_done() {
        Ok(())
    } else {
        Err(Reason::Syntax("end of line"))
    }
}

fn label(s: &ScaleSection, c: &mut Cursor) -> Result<usize, Reason> {
    let w = c.word().ok_or(Reason::Syntax("a scale label"))?;
    s.labels
        .iter()
        .position(|l| l == w)
        .ok_or_else(|| Reason::UnknownLabel(w.into()))
}

fn parse_universe(text: &str) -> Result<Universe, Reason> {
    let mut c = Cursor::new(text);
    let names = c.names();
    finish(&c)?;
    if names.is_empty() {
        return Err(Reason::Syntax("at least one element"));
    }
    Universe::new(names.iter().copied()).map_err(|e| match e {
        qualprob_core::EventError::DuplicateElement(n) => Reason::DuplicateElement(n),
        _ => Reason::UniverseTooLarge(names.len()),
    })
}

fn parse_family(universe: &Universe, text: &str) -> Result<Option<EventFamily>, Reason> {
    if text.trim() == "powerset" {
        return Ok(None);
    }
    let parser = Parser {
        universe,
        family: None,
    };
    let mut c = Cursor::new(text);
    let mut events = Vec::new();
    while !c.is_done() {
        let e = parser.event(&mut c)?;
        if events.contains(&e) {
            return Err(Reason::DuplicateEvent(universe.render(e)));
        }
        events.push(e);
    }
    if events.is_empty() {
        return Err(Reason::Syntax("`powerset` or a list of events"));
    }
    Ok(Some(
        EventFamily::new(universe.len(), events).expect("events are distinct"),
    ))
}

fn parse_labels(text: &str) -> Result<ScaleSection, Reason> {
    let mut c = Cursor::new(text);
    let labels: Vec<String> = c.names().into_iter().map(String::from).collect();
    finish(&c)?;
    if labels.is_empty() {
        return Err(Reason::Syntax("at least one scale label"));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Reason::DuplicateLabel(l.clone()));
        }
    }
    Ok(ScaleSection {
        labels,
        order: Vec::new(),
        map: Vec::new(),
    })
}

/// Canonical text: sections in the order universe, family, scale, map,
/// order, assign, bound, rel; one entry per line.
pub fn serialize(d: &Document) -> String {
    let mut out = String::new();
    let r = |e: Event| d.universe.render(e);
    out.push_str("universe: ");
    out.push_str(&d.universe.names().join(" "));
    out.push('\n');
    if let Some(f) = &d.family {
        let events: Vec<String> = f.events().iter().map(|&e| r(e)).collect();
        out.push_str(&format!("family: {}\n", events.join(" ")));
    }
    if let Some(s) = &d.scale {
        out.push_str(&format!("scale: {}\n", s.labels.join(" ")));
        for &(e, l) in &s.map {
            out.push_str(&format!("map: {} -> {}\n", r(e), s.labels[l]));
        }
        for o in &s.order {
            let sym = match o.kind {
                OrderKind::Below => '<',
                OrderKind::Same => '~',
            };
            out.push_str(&format!(
                "order: {} {sym} {}\n",
                s.labels[o.low], s.labels[o.high]
            ));
        }
    }
    if let Some(a) = &d.assignment {
        for (e, v) in &a.values {
            out.push_str(&format!("assign: {} = {v}\n", r(*e)));
        }
        if let Some(m) = a.bound {
            out.push_str(&format!("bound: {m}\n"));
        }
    }
    if let Some(rel) = &d.relation {
        for &(a, b) in &rel.strict {
            out.push_str(&format!("rel: {} > {}\n", r(a), r(b)));
        }
        for &(a, b) in &rel.equiv {
            out.push_str(&format!("rel: {} ~ {}\n", r(a), r(b)));
        }
    }
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

/// A document holding a relation, with every declared pair.
pub fn relation_document(universe: &Universe, r: &ComparativeRelation) -> Document {
    let family = r.family();
    let mut d = Document::new(universe.clone());
    if !family.is_power_set() {
        d.family = Some(family.clone());
    }
    let mut strict: Vec<_> = r.strict_pairs().collect();
    let mut equiv: Vec<_> = r.equiv_pairs().map(|(a, b)| (a.min(b), a.max(b))).collect();
    strict.sort_unstable();
    equiv.sort_unstable();
    equiv.dedup();
    d.relation = Some(RelationSection { strict, equiv });
    d
}
