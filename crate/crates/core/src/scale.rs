//! Finite probability scales.
//!
//! A [`Scale`] is a finite set of labels with an equivalence `≍` and a strict
//! order `≻`. The working elements are the `≍`-classes: declared equivalences
//! are closed into a partition, declared strict pairs are lifted to classes and
//! transitively closed. Classes are numbered by their least member's
//! declaration index.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// A square boolean matrix stored as rows of bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    size: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BitMatrix {
            size,
            words,
            bits: vec![0; size * words],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] & (1 << (col % 64)) != 0
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    /// `row |= other_row`, returning whether anything changed.
    fn union_rows(&mut self, row: usize, other: usize) -> bool {
        let mut changed = false;
        for w in 0..self.words {
            let src = self.bits[other * self.words + w];
            let dst = &mut self.bits[row * self.words + w];
            if src & !*dst != 0 {
                *dst |= src;
                changed = true;
            }
        }
        changed
    }

    /// Warshall's algorithm over bit rows.
    pub fn close_transitively(&mut self) {
        for k in 0..self.size {
            for i in 0..self.size {
                if self.get(i, k) {
                    self.union_rows(i, k);
                }
            }
        }
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&c| self.get(row, c))
    }
}

/// Items partitioned into equivalence classes with a transitively closed
/// strict relation between classes.
///
/// The relation may contain cycles (a class above itself); callers that need a
/// partial order reject those with [`ClassOrder::cyclic_class`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassOrder {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    above: BitMatrix,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl ClassOrder {
    /// Closes `equiv` into a partition of `0..items` and `strict` into a
    /// transitive relation on the resulting classes. Pair `(a, b)` in `strict`
    /// means `a ≻ b`.
    pub fn close(items: usize, strict: &[(usize, usize)], equiv: &[(usize, usize)]) -> Self {
        let mut parent: Vec<usize> = (0..items).collect();
        for &(a, b) in equiv {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let mut class_of = vec![usize::MAX; items];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut root_class: BTreeMap<usize, usize> = BTreeMap::new();
        for item in 0..items {
            let root = find(&mut parent, item);
            let next = members.len();
            let c = *root_class.entry(root).or_insert(next);
            if c == members.len() {
                members.push(Vec::new());
            }
            members[c].push(item);
            class_of[item] = c;
        }
        let mut above = BitMatrix::new(members.len());
        for &(a, b) in strict {
            above.set(class_of[a], class_of[b]);
        }
        above.close_transitively();
        ClassOrder {
            class_of,
            members,
            above,
        }
    }

    pub fn items(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, item: usize) -> usize {
        self.class_of[item]
    }

    /// Members of a class, ascending.
    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn class_above(&self, c: usize, d: usize) -> bool {
        self.above.get(c, d)
    }

    pub fn above(&self, a: usize, b: usize) -> bool {
        self.above.get(self.class_of[a], self.class_of[b])
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// `a ≽ b`: strictly above or in the same class.
    pub fn weakly_above(&self, a: usize, b: usize) -> bool {
        self.same_class(a, b) || self.above(a, b)
    }

    pub fn comparable_classes(&self, c: usize, d: usize) -> bool {
        c == d || self.above.get(c, d) || self.above.get(d, c)
    }

    /// Some class that lies strictly above itself, if any.
    pub fn cyclic_class(&self) -> Option<usize> {
        (0..self.class_count()).find(|&c| self.above.get(c, c))
    }

    pub fn is_acyclic(&self) -> bool {
        self.cyclic_class().is_none()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.above
    }

    /// A total order on classes, lowest first, consistent with the strict
    /// relation. Among classes whose lower neighbours are all placed, the one
    /// with the smallest class number (smallest least member) goes next.
    /// Classes on a cycle are never ready; they are appended in class order at
    /// the end so the output stays a permutation.
    pub fn linear_extension(&self) -> Vec<usize> {
        let k = self.class_count();
        let mut pending_below: Vec<usize> = (0..k)
            .map(|c| (0..k).filter(|&d| d != c && self.above.get(c, d)).count())
            .collect();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut ready: alloc::collections::BTreeSet<usize> = (0..k)
            .filter(|&c| pending_below[c] == 0 && !self.above.get(c, c))
            .collect();
        while let Some(c) = ready.pop_first() {
            placed[c] = true;
            order.push(c);
            for d in 0..k {
                if d != c && !placed[d] && self.above.get(d, c) {
                    pending_below[d] -= 1;
                    if pending_below[d] == 0 && !self.above.get(d, d) {
                        ready.insert(d);
                    }
                }
            }
        }
        order.extend((0..k).filter(|&c| !placed[c]));
        order
    }
}

impl core::fmt::Debug for ClassOrder {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let edges: Vec<(usize, usize)> = (0..self.class_count())
            .flat_map(|c| self.above.row(c).map(move |d| (c, d)))
            .collect();
        f.debug_struct("ClassOrder")
            .field("classes", &self.members)
            .field("above", &edges)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaleError {
    #[error("duplicate scale label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown scale label `{0}`")]
    UnknownLabel(String),
    #[error("strict order has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("`{0}` ≻ `{1}` is declared but both are in one equivalence class")]
    Contradiction(String, String),
}

/// Which relation to query on a scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `≻`
    Strict,
    /// `≽`
    NonStrict,
    /// `≍`
    Equiv,
}

/// A finite partially ordered probability scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scale {
    labels: Vec<String>,
    order: ClassOrder,
}

/// Classes of a scale listed lowest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    pub classes: Vec<usize>,
}

/// Answer of [`Scale::is_total_on`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Totality {
    Total,
    /// Two incomparable classes, named by their least members.
    Incomparable(String, String),
}

impl Totality {
    pub fn is_total(&self) -> bool {
        matches!(self, Totality::Total)
    }
}

impl Scale {
    /// Builds a scale. `strict` pairs `(a, b)` declare `a ≻ b`; `equiv` pairs
    /// declare `a ≍ b`.
    pub fn build<S: AsRef<str>>(
        labels: impl IntoIterator<Item = S>,
        strict: &[(S, S)],
        equiv: &[(S, S)],
    ) -> Result<Self, ScaleError> {
        let labels: Vec<String> = labels
            .into_iter()
            .map(|s| String::from(s.as_ref()))
            .collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ScaleError::DuplicateLabel(l.clone()));
            }
        }
        let index = |s: &S| {
            labels
                .iter()
                .position(|l| l == s.as_ref())
                .ok_or_else(|| ScaleError::UnknownLabel(s.as_ref().into()))
        };
        let strict_ix = strict
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, ScaleError>>()?;
        let equiv_ix = equiv
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, ScaleError>>()?;
        Self::from_indices(labels, &strict_ix, &equiv_ix)
    }

    /// Like [`Scale::build`] with pairs given as label indices.
    pub fn from_indices(
        labels: Vec<String>,
        strict: &[(usize, usize)],
        equiv: &[(usize, usize)],
    ) -> Result<Self, ScaleError> {
        let order = ClassOrder::close(labels.len(), strict, equiv);
        if let Some(&(a, b)) = strict.iter().find(|&&(a, b)| order.same_class(a, b)) {
            return Err(ScaleError::Contradiction(
                labels[a].clone(),
                labels[b].clone(),
            ));
        }
        if let Some(c) = order.cyclic_class() {
            return Err(ScaleError::CycleDetected(
                labels[order.members(c)[0]].clone(),
            ));
        }
        Ok(Scale { labels, order })
    }

    /// A chain `labels[0] ≺ labels[1] ≺ …`.
    pub fn chain(labels: Vec<String>) -> Self {
        let strict: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i, i - 1)).collect();
        Self::from_indices(labels, &strict, &[]).expect("a chain is acyclic")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn require(&self, label: &str) -> Result<usize, ScaleError> {
        self.index_of(label)
            .ok_or_else(|| ScaleError::UnknownLabel(label.into()))
    }

    pub fn order(&self) -> &ClassOrder {
        &self.order
    }

    pub fn class_count(&self) -> usize {
        self.order.class_count()
    }

    pub fn class_of(&self, label: usize) -> usize {
        self.order.class_of(label)
    }

    /// Label indices in a class, ascending.
    pub fn class_members(&self, class: usize) -> &[usize] {
        self.order.members(class)
    }

    /// The least member's label, used to name a class.
    pub fn class_name(&self, class: usize) -> &str {
        &self.labels[self.order.members(class)[0]]
    }

    pub fn holds(&self, a: &str, b: &str, rel: Relation) -> Result<bool, ScaleError> {
        let (a, b) = (self.require(a)?, self.require(b)?);
        Ok(self.holds_ix(a, b, rel))
    }

    pub fn holds_ix(&self, a: usize, b: usize, rel: Relation) -> bool {
        match rel {
            Relation::Strict => self.order.above(a, b),
            Relation::NonStrict => self.order.weakly_above(a, b),
            Relation::Equiv => self.order.same_class(a, b),
        }
    }

    pub fn linear_extension(&self) -> LinearExtension {
        LinearExtension {
            classes: self.order.linear_extension(),
        }
    }

    /// Whether every two distinct classes meeting `subset` are comparable.
    pub fn is_total_on<S: AsRef<str>>(
        &self,
        subset: impl IntoIterator<Item = S>,
    ) -> Result<Totality, ScaleError> {
        let mut ix = Vec::new();
        for s in subset {
            ix.push(self.require(s.as_ref())?);
        }
        Ok(self.is_total_on_indices(&ix))
    }

    pub fn is_total_on_indices(&self, labels: &[usize]) -> Totality {
        let mut classes: Vec<usize> = labels.iter().map(|&l| self.order.class_of(l)).collect();
        classes.sort_unstable();
        classes.dedup();
        for (i, &c) in classes.iter().enumerate() {
            for &d in &classes[i + 1..] {
                if !self.order.comparable_classes(c, d) {
                    return Totality::Incomparable(
                        self.class_name(c).into(),
                        self.class_name(d).into(),
                    );
                }
            }
        }
        Totality::Total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn scale(
        labels: &[&str],
        strict: &[(&str, &str)],
        equiv: &[(&str, &str)],
    ) -> Result<Scale, ScaleError> {
        Scale::build(labels.iter().copied(), strict, equiv)
    }

    #[test]
    fn build_examples() {
        let s = scale(&["x"], &[], &[]).unwrap();
        assert_eq!(s.class_count(), 1);

        let s = scale(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]).unwrap();
        assert!(s.holds("a", "c", Relation::Strict).unwrap());

        assert_eq!(
            scale(&["a", "b"], &[("a", "b"), ("b", "a")], &[]),
            Err(ScaleError::CycleDetected("a".into()))
        );
        assert_eq!(
            scale(&["a", "b"], &[("a", "b")], &[("b", "a")]),
            Err(ScaleError::Contradiction("a".into(), "b".into()))
        );
        assert_eq!(
            scale(&["a", "a"], &[], &[]),
            Err(ScaleError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            scale(&["a"], &[("a", "z")], &[]),
            Err(ScaleError::UnknownLabel("z".into()))
        );
    }

    #[test]
    fn holds_examples() {
        let s = scale(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert!(s.holds("a", "a", Relation::NonStrict).unwrap());
        assert!(!s.holds("b", "a", Relation::Strict).unwrap());
        assert!(s.holds("q", "a", Relation::Strict).is_err());

        let s = scale(&["a", "b", "c"], &[("b", "c")], &[("a", "b")]).unwrap();
        assert!(s.holds("a", "c", Relation::Strict).unwrap());
        assert!(s.holds("a", "b", Relation::Equiv).unwrap());
        assert!(!s.holds("a", "b", Relation::Strict).unwrap());
    }

    #[test]
    fn linear_extension_examples() {
        let s = scale(&["c1", "c2", "c3"], &[], &[]).unwrap();
        assert_eq!(s.linear_extension().classes, vec![0, 1, 2]);

        let s = scale(&["c1", "c2", "c3"], &[("c1", "c2"), ("c2", "c3")], &[]).unwrap();
        assert_eq!(s.linear_extension().classes, vec![2, 1, 0]);

        // top inserted first, then l, r, bottom
        let s = scale(
            &["top", "l", "r", "bot"],
            &[("top", "l"), ("top", "r"), ("l", "bot"), ("r", "bot")],
            &[],
        )
        .unwrap();
        assert_eq!(s.linear_extension().classes, vec![3, 1, 2, 0]);
    }

    #[test]
    fn totality_examples() {
        let s = scale(&["a", "b", "c"], &[("a", "b")], &[]).unwrap();
        assert!(s.is_total_on(["c"]).unwrap().is_total());
        assert!(s.is_total_on(["a", "b"]).unwrap().is_total());
        assert_eq!(
            s.is_total_on(["a", "c"]).unwrap(),
            Totality::Incomparable("a".into(), "c".into())
        );
        assert!(s.is_total_on(["nope"]).is_err());
    }
}
