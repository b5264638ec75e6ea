//! Finite universes, events and families of events.
//!
//! An [`Event`] is a subset of a universe of at most [`MAX_UNIVERSE`]
//! elements, stored as a bitmask. Events order lexicographically by their
//! sorted member indices (`{} < {0} < {0 1} < {0 2} < {1}`), which is the
//! canonical order used for families and for witness lists.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

use crate::report::{AxiomReport, Witness};

/// Hard cap on the number of elementary events.
pub const MAX_UNIVERSE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("universe has {0} elements; at most {MAX_UNIVERSE} are supported")]
    UniverseTooLarge(usize),
    #[error("element names must be non-empty")]
    EmptyName,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {index} is outside a universe of {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("events belong to different universes")]
    UniverseMismatch,
    #[error("duplicate event in family")]
    DuplicateEvent,
}

/// The finite set of elementary events, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, EventError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(EventError::EmptyName);
            }
            if names[..i].contains(name) {
                return Err(EventError::DuplicateElement(name.clone()));
            }
        }
        Ok(Universe { names })
    }

    /// A universe of `n` elements named `w1 .. wn`.
    pub fn numbered(n: usize) -> Result<Self, EventError> {
        Self::new((1..=n).map(|i| alloc::format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The event containing exactly the named elements.
    pub fn event<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Event, EventError> {
        let mut indices = Vec::new();
        for name in names {
            let name = name.as_ref();
            let i = self
                .index_of(name)
                .ok_or_else(|| EventError::UnknownElement(name.into()))?;
            indices.push(i);
        }
        Event::from_indices(self.len(), indices)
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn full_event(&self) -> Event {
        Event::full(self.len())
    }

    /// Renders an event as `{a b}` using this universe's names.
    pub fn render(&self, event: Event) -> String {
        let mut out = String::from("{");
        for (k, i) in event.members().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }
}

/// A subset of a universe of `width` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    bits: u32,
    width: u8,
}

impl Event {
    pub fn empty(width: usize) -> Self {
        debug_assert!(width <= MAX_UNIVERSE);
        Event {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        debug_assert!(width <= MAX_UNIVERSE);
        Event {
            bits: mask_of(width),
            width: width as u8,
        }
    }

    pub fn from_indices(
        width: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, EventError> {
        if width > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(width));
        }
        let mut bits = 0u32;
        for i in indices {
            if i >= width {
                return Err(EventError::IndexOutOfRange {
                    index: i,
                    size: width,
                });
            }
            bits |= 1 << i;
        }
        Ok(Event {
            bits,
            width: width as u8,
        })
    }

    /// Event from a raw bitmask; bits at or above `width` are rejected.
    pub fn from_bits(width: usize, bits: u32) -> Result<Self, EventError> {
        if width > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(width));
        }
        if bits & !mask_of(width) != 0 {
            return Err(EventError::IndexOutOfRange {
                index: (31 - (bits & !mask_of(width)).leading_zeros()) as usize,
                size: width,
            });
        }
        Ok(Event {
            bits,
            width: width as u8,
        })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask_of(self.width())
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.bits & (1 << index) != 0
    }

    /// Member indices, ascending.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn is_superset_of(self, other: Event) -> bool {
        self.width == other.width && other.bits & !self.bits == 0
    }

    pub fn is_disjoint_from(self, other: Event) -> bool {
        self.bits & other.bits == 0
    }

    pub fn union(self, other: Event) -> Event {
        debug_assert_eq!(self.width, other.width);
        Event {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    pub fn intersection(self, other: Event) -> Event {
        debug_assert_eq!(self.width, other.width);
        Event {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    pub fn difference(self, other: Event) -> Event {
        debug_assert_eq!(self.width, other.width);
        Event {
            bits: self.bits & !other.bits,
            width: self.width,
        }
    }

    pub fn complement(self) -> Event {
        Event {
            bits: !self.bits & mask_of(self.width()),
            width: self.width,
        }
    }

    pub fn singleton(width: usize, index: usize) -> Event {
        debug_assert!(index < width);
        Event {
            bits: 1 << index,
            width: width as u8,
        }
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width.cmp(&other.width).then_with(|| {
            let (mut a, mut b) = (self.bits, other.bits);
            loop {
                match (a == 0, b == 0) {
                    (true, true) => return Ordering::Equal,
                    (true, false) => return Ordering::Less,
                    (false, true) => return Ordering::Greater,
                    _ => {}
                }
                let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
                if la != lb {
                    return la.cmp(&lb);
                }
                a &= a - 1;
                b &= b - 1;
            }
        })
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

fn mask_of(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    Complement,
}

/// Applies a set operation. For `Complement` the second operand is ignored.
pub fn combine(a: Event, b: Event, op: SetOp) -> Result<Event, EventError> {
    if op != SetOp::Complement && a.width != b.width {
        return Err(EventError::UniverseMismatch);
    }
    Ok(match op {
        SetOp::Union => a.union(b),
        SetOp::Intersection => a.intersection(b),
        SetOp::Difference => a.difference(b),
        SetOp::Complement => a.complement(),
    })
}

/// A duplicate-free collection of events over one universe, kept in
/// canonical order. Positions in [`EventFamily::events`] are stable and are
/// used as event indices throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventFamily {
    width: u8,
    events: Vec<Event>,
    slots: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl EventFamily {
    pub fn new(width: usize, events: impl IntoIterator<Item = Event>) -> Result<Self, EventError> {
        if width > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(width));
        }
        let mut events: Vec<Event> = events.into_iter().collect();
        if events.iter().any(|e| e.width() != width) {
            return Err(EventError::UniverseMismatch);
        }
        events.sort();
        let before = events.len();
        events.dedup();
        if events.len() != before {
            return Err(EventError::DuplicateEvent);
        }
        Ok(Self::from_sorted(width, events))
    }

    fn from_sorted(width: usize, events: Vec<Event>) -> Self {
        let mut slots = vec![ABSENT; 1usize << width];
        for (i, e) in events.iter().enumerate() {
            slots[e.bits as usize] = i as u32;
        }
        EventFamily {
            width: width as u8,
            events,
            slots,
        }
    }

    /// All `2^n` subsets of a universe of `width` elements.
    pub fn power_set_of_width(width: usize) -> Result<Self, EventError> {
        if width > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(width));
        }
        let mut events: Vec<Event> = (0..1u32 << width)
            .map(|bits| Event {
                bits,
                width: width as u8,
            })
            .collect();
        events.sort();
        Ok(Self::from_sorted(width, events))
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn event(&self, index: usize) -> Event {
        self.events[index]
    }

    pub fn index_of(&self, event: Event) -> Option<usize> {
        if event.width != self.width {
            return None;
        }
        match self.slots[event.bits as usize] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    pub fn contains(&self, event: Event) -> bool {
        self.index_of(event).is_some()
    }

    pub fn contains_empty(&self) -> bool {
        self.slots[0] != ABSENT
    }

    pub fn contains_universe(&self) -> bool {
        self.slots[mask_of(self.width()) as usize] != ABSENT
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.width())
    }

    pub fn universe_event(&self) -> Event {
        Event::full(self.width())
    }

    pub fn is_power_set(&self) -> bool {
        self.events.len() == 1usize << self.width
    }

    /// True when every event of `self` belongs to `other`.
    pub fn is_subfamily_of(&self, other: &EventFamily) -> bool {
        self.width == other.width && self.events.iter().all(|&e| other.contains(e))
    }

    /// True when every singleton of the universe is present.
    pub fn contains_all_singletons(&self) -> bool {
        (0..self.width()).all(|i| self.contains(Event::singleton(self.width(), i)))
    }

    pub fn is_union_closed(&self) -> bool {
        self.events
            .iter()
            .all(|&a| self.events.iter().all(|&b| self.contains(a.union(b))))
    }
}

impl fmt::Debug for EventFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.events.iter()).finish()
    }
}

pub fn power_set(universe: &Universe) -> EventFamily {
    EventFamily::power_set_of_width(universe.len())
        .expect("universe size is capped at construction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    /// Union, intersection and difference.
    Algebra,
    /// Additionally complement.
    Field,
}

/// The least family containing `seed`, the empty event and the universe that
/// is closed under the operations of `mode`.
pub fn close_family(seed: &EventFamily, mode: ClosureMode) -> EventFamily {
    let width = seed.width();
    let mut present = vec![false; 1usize << width];
    let mut members: Vec<Event> = Vec::new();
    let mut queue: VecDeque<Event> = VecDeque::new();
    let admit = |e: Event, present: &mut Vec<bool>, queue: &mut VecDeque<Event>| {
        if !present[e.bits as usize] {
            present[e.bits as usize] = true;
            queue.push_back(e);
        }
    };
    admit(Event::empty(width), &mut present, &mut queue);
    admit(Event::full(width), &mut present, &mut queue);
    for &e in seed.events() {
        admit(e, &mut present, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        members.push(x);
        if mode == ClosureMode::Field {
            admit(x.complement(), &mut present, &mut queue);
        }
        for i in 0..members.len() {
            let y = members[i];
            admit(x.union(y), &mut present, &mut queue);
            admit(x.intersection(y), &mut present, &mut queue);
            admit(x.difference(y), &mut present, &mut queue);
            admit(y.difference(x), &mut present, &mut queue);
        }
    }
    members.sort();
    EventFamily::from_sorted(width, members)
}

/// Structural axioms for families of permissible events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyAxiom {
    /// Boolean algebra containing the universe.
    Sip1,
    /// Set algebra containing the universe.
    Sip2,
    /// Set field.
    Sip3,
}

impl FamilyAxiom {
    pub fn name(self) -> &'static str {
        match self {
            FamilyAxiom::Sip1 => "SIP1",
            FamilyAxiom::Sip2 => "SIP2",
            FamilyAxiom::Sip3 => "SIP3",
        }
    }
}

type BinaryOp = fn(Event, Event) -> Event;

/// Checks a family against one structural axiom.
///
/// For concrete subset families a Boolean subalgebra of `2^U` is a set field,
/// so SIP1 is checked as membership of `U` and `∅` plus closure under union,
/// intersection and complement. A family containing `U` that is closed under
/// difference is closed under complement, so SIP2 and SIP3 agree on every
/// family; they are still reported separately.
///
/// Each failing clause contributes its first violation in canonical order.
pub fn check_family(family: &EventFamily, axiom: FamilyAxiom) -> AxiomReport {
    let mut witnesses = Vec::new();
    let empty = family.empty_event();
    let full = family.universe_event();
    if !family.contains(full) {
        witnesses.push(Witness::events("universe-missing", [full]));
    }
    if !family.contains(empty) {
        witnesses.push(Witness::events("empty-missing", [empty]));
    }
    let binary: &[(&'static str, BinaryOp)] = match axiom {
        FamilyAxiom::Sip1 => &[
            ("union", Event::union),
            ("intersection", Event::intersection),
        ],
        FamilyAxiom::Sip2 | FamilyAxiom::Sip3 => &[
            ("union", Event::union),
            ("intersection", Event::intersection),
            ("difference", Event::difference),
        ],
    };
    for &(clause, op) in binary {
        'search: for &a in family.events() {
            for &b in family.events() {
                let r = op(a, b);
                if !family.contains(r) {
                    witnesses.push(Witness::events(clause, [a, b, r]));
                    break 'search;
                }
            }
        }
    }
    if matches!(axiom, FamilyAxiom::Sip1 | FamilyAxiom::Sip3) {
        if let Some(&a) = family
            .events()
            .iter()
            .find(|a| !family.contains(a.complement()))
        {
            witnesses.push(Witness::events("complement", [a, a.complement()]));
        }
    }
    AxiomReport::from_witnesses(axiom.name(), witnesses)
}

/// True when the family satisfies SIP2, the precondition for the additivity
/// checks.
pub fn is_set_algebra(family: &EventFamily) -> bool {
    check_family(family, FamilyAxiom::Sip2).passed()
}
