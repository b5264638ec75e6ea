//! Seeded random instances and brute-force oracles for the test suites.

use std::collections::{HashMap, HashSet, VecDeque};

use qualprob_core::{
    power_set, ComparativeRelation, Event, EventFamily, NumericProbability, ProbabilityStructure,
    Rational, Scale, Universe, WeightMode,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn universe(n: usize) -> Universe {
    Universe::numbered(n).expect("small universe")
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("non-zero denominator")
}

/// Non-negative rational weights, at least one positive.
pub fn weights(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    loop {
        let w: Vec<Rational> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.15) {
                    Rational::zero()
                } else {
                    q(rng.gen_range(1..=9), rng.gen_range(1..=4))
                }
            })
            .collect();
        if w.iter().any(|x| x.is_positive()) {
            return w;
        }
    }
}

/// A classical probability on the power set of `n` elements.
pub fn classical(rng: &mut StdRng, n: usize) -> NumericProbability {
    let w = weights(rng, n);
    NumericProbability::from_weights(&universe(n), &w, WeightMode::Normalize)
        .expect("valid weights")
}

/// An inflated probability with `P(Ω) = m` exactly and bound `m`.
pub fn inflated(rng: &mut StdRng, n: usize, m: u64) -> NumericProbability {
    let w = weights(rng, n);
    let total: Rational = w.iter().sum();
    let scale = &Rational::from_integer(m as i64) / &total;
    let w: Vec<Rational> = w.iter().map(|x| x * &scale).collect();
    let p =
        NumericProbability::from_weights(&universe(n), &w, WeightMode::Raw).expect("valid weights");
    p.with_bound(m).expect("positive bound")
}

/// A random partition of `0..n` into non-empty blocks, as bitmasks.
pub fn partition(rng: &mut StdRng, n: usize) -> Vec<u32> {
    let blocks = if n == 0 { 0 } else { rng.gen_range(1..=n) };
    let mut masks = vec![0u32; blocks];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (k, &i) in order.iter().enumerate() {
        let b = if k < blocks {
            k
        } else {
            rng.gen_range(0..blocks)
        };
        masks[b] |= 1 << i;
    }
    masks
}

/// Merges random blocks of a partition.
pub fn coarsen(rng: &mut StdRng, blocks: &[u32]) -> Vec<u32> {
    if blocks.is_empty() {
        return Vec::new();
    }
    let target = rng.gen_range(1..=blocks.len());
    let mut merged = vec![0u32; target];
    let mut order = blocks.to_vec();
    order.shuffle(rng);
    for (k, &b) in order.iter().enumerate() {
        let slot = if k < target {
            k
        } else {
            rng.gen_range(0..target)
        };
        merged[slot] |= b;
    }
    merged
}

/// The set field generated by a partition: all unions of its blocks.
pub fn field_of(width: usize, blocks: &[u32]) -> EventFamily {
    let events = (0u32..1 << blocks.len()).map(|choice| {
        let bits = blocks
            .iter()
            .enumerate()
            .filter(|(k, _)| choice >> k & 1 == 1)
            .fold(0, |acc, (_, &b)| acc | b);
        Event::from_bits(width, bits).expect("in range")
    });
    EventFamily::new(width, events).expect("distinct unions of disjoint blocks")
}

pub fn subfield(rng: &mut StdRng, n: usize) -> EventFamily {
    let blocks = partition(rng, n);
    field_of(n, &blocks)
}

/// Random strict and equivalence pairs over `family`; may be cyclic.
pub fn relation(rng: &mut StdRng, family: &EventFamily, density: f64) -> ComparativeRelation {
    let events = family.events();
    loop {
        let mut strict = Vec::new();
        let mut equiv = Vec::new();
        for (i, &a) in events.iter().enumerate() {
            for &b in &events[i + 1..] {
                if !rng.gen_bool(density) {
                    continue;
                }
                match rng.gen_range(0..5) {
                    0 | 1 => strict.push((a, b)),
                    2 | 3 => strict.push((b, a)),
                    _ => equiv.push((a, b)),
                }
            }
        }
        if let Ok(r) = ComparativeRelation::new(family.clone(), strict, equiv) {
            return r;
        }
    }
}

/// A random weak order on the events (levels drawn independently).
pub fn weak_order(rng: &mut StdRng, family: &EventFamily, levels: u32) -> ComparativeRelation {
    let level: Vec<u32> = family
        .events()
        .iter()
        .map(|_| rng.gen_range(0..levels))
        .collect();
    relation_from_levels(family, &level)
}

pub fn relation_from_levels<T: Ord>(family: &EventFamily, level: &[T]) -> ComparativeRelation {
    let events = family.events();
    let mut strict = Vec::new();
    let mut equiv = Vec::new();
    for (i, &a) in events.iter().enumerate() {
        for (j, &b) in events.iter().enumerate() {
            if level[i] > level[j] {
                strict.push((a, b));
            } else if i < j && level[i] == level[j] {
                equiv.push((a, b));
            }
        }
    }
    ComparativeRelation::new(family.clone(), strict, equiv).expect("levels are consistent")
}

/// Label for a multiset of positive levels, largest first.
fn multiset_label(levels: &[u32]) -> String {
    let parts: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    format!("m{}", parts.join("."))
}

/// Whether `a` dominates `b` positionwise once both are sorted descending
/// and padded with zeros.
pub fn dominates(a: &[u32], b: &[u32]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|k| a.get(k).copied().unwrap_or(0) >= b.get(k).copied().unwrap_or(0))
}

/// A total elementary structure: singletons get random levels `0..=max`
/// (at least one positive), every event maps to the multiset of its
/// positive levels, and multisets are ordered by padded dominance.
pub fn elementary(rng: &mut StdRng, n: usize, max_level: u32) -> ProbabilityStructure {
    let levels: Vec<u32> = loop {
        let l: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_level)).collect();
        if l.iter().any(|&x| x > 0) {
            break l;
        }
    };
    elementary_from_levels(&levels)
}

pub fn elementary_from_levels(levels: &[u32]) -> ProbabilityStructure {
    let n = levels.len();
    let family = power_set(&universe(n));
    let keys: Vec<Vec<u32>> = family
        .events()
        .iter()
        .map(|e| {
            let mut m: Vec<u32> = e.members().map(|i| levels[i]).filter(|&l| l > 0).collect();
            m.sort_unstable_by(|x, y| y.cmp(x));
            m
        })
        .collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    let labels: Vec<String> = distinct.iter().map(|m| multiset_label(m)).collect();
    let mut strict = Vec::new();
    for (i, a) in distinct.iter().enumerate() {
        for (j, b) in distinct.iter().enumerate() {
            if i != j && dominates(a, b) {
                strict.push((i, j));
            }
        }
    }
    let scale = Scale::from_indices(labels, &strict, &[]).expect("dominance is a partial order");
    let assignment = keys
        .iter()
        .map(|k| distinct.binary_search(k).expect("listed"))
        .collect();
    ProbabilityStructure::new(family, scale, assignment).expect("one label per event")
}

/// A chain `0 ≺ 1 ≺ … ≺ len-1` labelled by the integers.
pub fn integer_chain(len: usize) -> Scale {
    Scale::chain((0..len).map(|i| i.to_string()).collect())
}

/// Rank of each event's value among the distinct values, times `spacing`.
pub fn ranks(p: &NumericProbability, spacing: usize) -> Vec<usize> {
    let mut distinct = p.values().to_vec();
    distinct.sort();
    distinct.dedup();
    p.values()
        .iter()
        .map(|v| distinct.binary_search(v).expect("listed") * spacing)
        .collect()
}

/// A structure on `family` with uniformly random labels of `scale`.
pub fn random_structure(
    rng: &mut StdRng,
    family: &EventFamily,
    scale: &Scale,
) -> ProbabilityStructure {
    let assignment = (0..family.len())
        .map(|_| rng.gen_range(0..scale.len()))
        .collect();
    ProbabilityStructure::new(family.clone(), scale.clone(), assignment).expect("labels in range")
}

/// A random scale: labels `x0..`, strict pairs from a random DAG over a
/// shuffled order, and a few equivalences.
pub fn random_scale(rng: &mut StdRng, len: usize) -> Scale {
    let labels: Vec<String> = (0..len).map(|i| format!("x{i}")).collect();
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    let mut strict = Vec::new();
    let mut equiv = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let roll = rng.gen_range(0..10);
            if roll < 4 {
                strict.push((order[j], order[i]));
            } else if roll == 4 {
                equiv.push((order[j], order[i]));
            }
        }
    }
    // an equivalence between strictly related labels would contradict; drop
    // equivalences until consistent
    loop {
        match Scale::from_indices(labels.clone(), &strict, &equiv) {
            Ok(s) => return s,
            Err(_) => {
                equiv.pop();
            }
        }
    }
}

/// Structures on nested fields `H ⊆ G ⊆ F` over one integer chain. Each
/// labels an event by `3·rank + shift` of a shared classical probability,
/// or, with small probability, uniformly at random.
pub fn nested(rng: &mut StdRng, n: usize) -> [ProbabilityStructure; 3] {
    let num = classical(rng, n);
    let ranks = ranks(&num, 3);
    let distinct = ranks.iter().max().expect("non-empty") / 3 + 1;
    let chain = integer_chain(3 * distinct + 3);
    let f_blocks = partition(rng, n);
    let g_blocks = coarsen(rng, &f_blocks);
    let h_blocks = coarsen(rng, &g_blocks);
    let full = num.family().clone();
    let mut out = Vec::new();
    for blocks in [&h_blocks, &g_blocks, &f_blocks] {
        let family = field_of(n, blocks);
        let p = if rng.gen_bool(0.15) {
            random_structure(rng, &family, &chain)
        } else {
            let shift = if rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(1..3)
            };
            let assignment = family
                .events()
                .iter()
                .map(|&e| ranks[full.index_of(e).expect("subfamily")] + shift)
                .collect();
            ProbabilityStructure::new(family, chain.clone(), assignment).expect("labels in range")
        };
        out.push(p);
    }
    out.try_into().expect("three structures")
}

// ---------------------------------------------------------------------------
// Comparative orders on the power set for the representability oracles.

/// A total strict order of all events of `2^U`, listed lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrictOrder {
    pub width: usize,
    /// Event bitmasks, lowest first.
    pub chain: Vec<u32>,
}

impl StrictOrder {
    /// The order induced by weights with pairwise distinct event sums.
    pub fn from_weights(width: usize, weights: &[i64]) -> Option<StrictOrder> {
        let mut chain: Vec<u32> = (0..1u32 << width).collect();
        let sum = |m: u32| -> i64 {
            (0..width)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| weights[i])
                .sum()
        };
        chain.sort_by_key(|&m| sum(m));
        let distinct = chain.windows(2).all(|w| sum(w[0]) != sum(w[1]));
        distinct.then_some(StrictOrder { width, chain })
    }

    pub fn relation(&self) -> ComparativeRelation {
        let family =
            qualprob_core::EventFamily::power_set_of_width(self.width).expect("small width");
        let ev = |m: u32| Event::from_bits(self.width, m).expect("in range");
        let strict = self.chain.windows(2).map(|w| (ev(w[1]), ev(w[0])));
        ComparativeRelation::new(family, strict, []).expect("chain pairs are consistent")
    }

    fn rank(&self) -> HashMap<u32, usize> {
        self.chain
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect()
    }

    /// Whether `A ≻ B ⇔ A∪C ≻ B∪C` for all `C` disjoint from `A ∪ B`.
    pub fn is_additive_order(&self) -> bool {
        let rank = self.rank();
        let full = (1u32 << self.width) - 1;
        for a in 0..=full {
            for b in 0..=full {
                if a & b != 0 || a == b {
                    continue;
                }
                let free = full & !(a | b);
                let mut c = free;
                while c != 0 {
                    if (rank[&a] > rank[&b]) != (rank[&(a | c)] > rank[&(b | c)]) {
                        return false;
                    }
                    c = (c - 1) & free;
                }
            }
        }
        self.chain[0] == 0
    }

    /// Difference vectors `1_A − 1_B` over all `A ≻ B`.
    pub fn differences(&self) -> HashSet<Vec<i8>> {
        let mut out = HashSet::new();
        for (i, &b) in self.chain.iter().enumerate() {
            for &a in &self.chain[i + 1..] {
                out.insert(
                    (0..self.width)
                        .map(|k| (a >> k & 1) as i8 - (b >> k & 1) as i8)
                        .collect(),
                );
            }
        }
        out
    }

    /// Orders reached by one flip: swap an adjacent pair `X ≻ Y` (disjoint
    /// after removing the common part) together with all its translates,
    /// provided every translate pair is adjacent. Invalid results are
    /// dropped.
    pub fn flips(&self) -> Vec<StrictOrder> {
        let full = (1u32 << self.width) - 1;
        let rank = self.rank();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for w in self.chain.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let common = lo & hi;
            let (x, y) = (hi & !common, lo & !common);
            if !seen.insert((x, y)) {
                continue;
            }
            let free = full & !(x | y);
            let mut translates = Vec::new();
            let mut d = free;
            loop {
                translates.push((x | d, y | d));
                if d == 0 {
                    break;
                }
                d = (d - 1) & free;
            }
            let adjacent = translates.iter().all(|&(a, b)| rank[&a] == rank[&b] + 1);
            if !adjacent {
                continue;
            }
            let mut chain = self.chain.clone();
            for &(a, b) in &translates {
                chain.swap(rank[&a], rank[&b]);
            }
            let next = StrictOrder {
                width: self.width,
                chain,
            };
            if next.is_additive_order() {
                out.push(next);
            }
        }
        out
    }
}

/// Whether some non-empty multiset of at most `2 * half` difference vectors
/// sums to zero (a cancellation certificate against additivity).
pub fn has_cancellation(differences: &HashSet<Vec<i8>>, half: usize) -> bool {
    let vectors: Vec<&Vec<i8>> = differences.iter().collect();
    let mut sums: HashSet<Vec<i8>> = HashSet::new();
    let mut frontier: Vec<Vec<i8>> = vectors.iter().map(|v| (*v).clone()).collect();
    for _ in 0..half {
        let mut next = Vec::new();
        for s in frontier {
            if sums.insert(s.clone()) {
                next.push(s);
            }
        }
        frontier = next
            .iter()
            .flat_map(|s| {
                vectors.iter().map(move |v| {
                    s.iter()
                        .zip(v.iter())
                        .map(|(a, b)| a + b)
                        .collect::<Vec<i8>>()
                })
            })
            .collect();
    }
    sums.iter().any(|s| {
        let neg: Vec<i8> = s.iter().map(|x| -x).collect();
        s.iter().all(|&x| x == 0) || sums.contains(&neg)
    })
}

/// Breadth-first search over flips from additive orders of `2^U` for a
/// valid order that admits a cancellation. Returns the order, the number of
/// orders visited, and whether one was found within `limit` visits.
pub fn search_non_additive(
    width: usize,
    seed_weights: &[i64],
    limit: usize,
) -> Option<(StrictOrder, usize)> {
    let start = StrictOrder::from_weights(width, seed_weights)?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.chain.clone());
    queue.push_back(start);
    let mut visited = 0;
    while let Some(order) = queue.pop_front() {
        visited += 1;
        if has_cancellation(&order.differences(), 3) {
            return Some((order, visited));
        }
        if visited >= limit {
            return None;
        }
        for next in order.flips() {
            if seen.insert(next.chain.clone()) {
                queue.push_back(next);
            }
        }
    }
    None
}

/// Every weak order on the events of `2^U` (ordered set partitions), as a
/// level per event bitmask. Exponential; intended for `|U| ≤ 3`.
pub fn all_weak_orders(width: usize) -> Vec<Vec<u8>> {
    let n = 1usize << width;
    let mut partitions = Vec::new();
    // restricted growth strings: block ids in order of first appearance
    fn go(i: usize, blocks: u8, block: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, u8)>) {
        if i == block.len() {
            out.push((block.clone(), blocks));
            return;
        }
        for b in 0..=blocks {
            block[i] = b;
            go(i + 1, blocks.max(b + 1), block, out);
        }
    }
    go(0, 0, &mut vec![0u8; n], &mut partitions);
    let mut out = Vec::new();
    for (block, k) in partitions {
        let mut perm: Vec<u8> = (0..k).collect();
        loop {
            out.push(block.iter().map(|&b| perm[b as usize]).collect());
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
