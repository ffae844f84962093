//! Ranked Hasse diagrams over opaque node keys.
//!
//! The same engine serves `S_n`, the involutions `𝔍_n` and clan posets.
//! Node ids are indices into the diagram, assigned in `(rank, key)` order so
//! that every derived output is deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::perm::{Involution, Permutation};

pub type NodeId = usize;

/// Edge label: a pair of positions, compared lexicographically.
pub type Label = (usize, usize);

/// Bound collecting what node keys need.
pub trait NodeKey: Clone + Ord + fmt::Display {}

impl<T: Clone + Ord + fmt::Display> NodeKey for T {}

#[derive(Clone, Debug)]
pub struct RankedHasse<K> {
    keys: Vec<K>,
    index: BTreeMap<K, NodeId>,
    ranks: Vec<usize>,
    /// Covers as `(lower, upper)`, sorted by `(rank, lower key, upper key)`.
    edges: Vec<(NodeId, NodeId)>,
    edge_index: HashMap<(NodeId, NodeId), usize>,
    up: Vec<Vec<NodeId>>,
    down: Vec<Vec<NodeId>>,
    labels: Option<Vec<Label>>,
}

impl<K: NodeKey> RankedHasse<K> {
    /// Builds the Hasse diagram of the order `leq` on `elements`.
    ///
    /// Covers are the pairs `x < y` with an empty open interval; each must
    /// raise `rank_fn` by exactly one.
    pub fn build(
        elements: impl IntoIterator<Item = K>,
        rank_fn: impl Fn(&K) -> usize,
        leq_fn: impl Fn(&K, &K) -> bool,
    ) -> Result<Self> {
        let mut nodes: Vec<(usize, K)> = elements.into_iter().map(|k| (rank_fn(&k), k)).collect();
        nodes.sort();
        nodes.dedup_by(|a, b| a.1 == b.1);
        let n = nodes.len();
        let mut above = vec![BitSet::new(n); n];
        let mut below = vec![BitSet::new(n); n];
        for x in 0..n {
            for y in 0..n {
                if x != y && leq_fn(&nodes[x].1, &nodes[y].1) {
                    above[x].set(y);
                    below[y].set(x);
                }
            }
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for y in above[x].ones() {
                if !above[x].intersects(&below[y]) {
                    covers.push((x, y));
                }
            }
        }
        let (ranks, keys): (Vec<usize>, Vec<K>) = nodes.into_iter().unzip();
        Self::assemble(keys, ranks, covers)
    }

    /// Builds a diagram from explicit ranks and cover edges `(lower, upper)`.
    pub fn from_covers(
        nodes: impl IntoIterator<Item = (K, usize)>,
        covers: impl IntoIterator<Item = (K, K)>,
    ) -> Result<Self> {
        let mut nodes: Vec<(usize, K)> = nodes.into_iter().map(|(k, r)| (r, k)).collect();
        nodes.sort();
        nodes.dedup_by(|a, b| a.1 == b.1);
        let index: BTreeMap<K, NodeId> =
            nodes.iter().enumerate().map(|(i, (_, k))| (k.clone(), i)).collect();
        let mut edges = Vec::new();
        for (lo, hi) in covers {
            let a = *index.get(&lo).ok_or_else(|| Error::UnknownNode(lo.to_string()))?;
            let b = *index.get(&hi).ok_or_else(|| Error::UnknownNode(hi.to_string()))?;
            edges.push((a, b));
        }
        edges.sort_unstable();
        edges.dedup();
        let (ranks, keys): (Vec<usize>, Vec<K>) = nodes.into_iter().unzip();
        Self::assemble(keys, ranks, edges)
    }

    fn assemble(keys: Vec<K>, ranks: Vec<usize>, mut edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        for &(a, b) in &edges {
            if ranks[b] != ranks[a] + 1 {
                return Err(Error::GradingViolation {
                    lower: keys[a].to_string(),
                    upper: keys[b].to_string(),
                    gap: ranks[b] as i64 - ranks[a] as i64,
                });
            }
        }
        // Node ids follow (rank, key), so id order is the edge order.
        edges.sort_unstable();
        let n = keys.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &(a, b)) in edges.iter().enumerate() {
            up[a].push(b);
            down[b].push(a);
            edge_index.insert((a, b), e);
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Ok(RankedHasse {
            keys,
            index,
            ranks,
            edges,
            edge_index,
            up,
            down,
            labels: None,
        })
    }

    /// Attaches a label to every cover edge.
    pub fn with_labels(mut self, label: impl Fn(&K, &K) -> Result<Label>) -> Result<Self> {
        let labels = self
            .edges
            .iter()
            .map(|&(a, b)| label(&self.keys[a], &self.keys[b]))
            .collect::<Result<Vec<_>>>()?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn key(&self, id: NodeId) -> &K {
        &self.keys[id]
    }

    pub fn rank(&self, id: NodeId) -> usize {
        self.ranks[id]
    }

    pub fn id(&self, key: &K) -> Result<NodeId> {
        self.index
            .get(key)
            .copied()
            .ok_or_else(|| Error::UnknownNode(key.to_string()))
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_id(&self, lower: NodeId, upper: NodeId) -> Option<usize> {
        self.edge_index.get(&(lower, upper)).copied()
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn up(&self, id: NodeId) -> &[NodeId] {
        &self.up[id]
    }

    pub fn down(&self, id: NodeId) -> &[NodeId] {
        &self.down[id]
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Node counts per rank, from rank 0 to the maximum rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        if self.is_empty() {
            return Vec::new();
        }
        let min = self.ranks.iter().copied().min().unwrap_or(0);
        let mut sizes = vec![0; self.max_rank() - min + 1];
        for &r in &self.ranks {
            sizes[r - min] += 1;
        }
        sizes
    }

    pub fn minimal(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&v| self.down[v].is_empty()).collect()
    }

    pub fn maximal(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&v| self.up[v].is_empty()).collect()
    }

    /// The unique minimal and maximal nodes, when the poset is bounded.
    pub fn bounds(&self) -> Option<(NodeId, NodeId)> {
        match (self.minimal().as_slice(), self.maximal().as_slice()) {
            ([lo], [hi]) => Some((*lo, *hi)),
            _ => None,
        }
    }

    /// Nodes `z ≥ x`, including `x`.
    pub(crate) fn up_closure(&self, x: NodeId) -> BitSet {
        let mut seen = BitSet::new(self.len());
        seen.set(x);
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            for &w in &self.up[v] {
                if !seen.get(w) {
                    seen.set(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Nodes `z ≤ y`, including `y`.
    pub(crate) fn down_closure(&self, y: NodeId) -> BitSet {
        let mut seen = BitSet::new(self.len());
        seen.set(y);
        let mut stack = vec![y];
        while let Some(v) = stack.pop() {
            for &w in &self.down[v] {
                if !seen.get(w) {
                    seen.set(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// `above[x]` = nodes `z ≥ x` for every `x` (reflexive transitive closure).
    pub(crate) fn closure(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut above = vec![BitSet::new(n); n];
        for x in (0..n).rev() {
            above[x].set(x);
            for &w in &self.up[x] {
                let (lo, hi) = above.split_at_mut(w);
                lo[x].or_with(&hi[0]);
            }
        }
        above
    }

    /// Whether `x ≤ y` in the transitive closure of the covers.
    pub fn leq(&self, x: NodeId, y: NodeId) -> bool {
        if self.ranks[x] > self.ranks[y] {
            return false;
        }
        self.up_closure(x).get(y)
    }

    fn interval_nodes(&self, x: NodeId, y: NodeId) -> Result<Vec<NodeId>> {
        let up = self.up_closure(x);
        if !up.get(y) {
            return Err(Error::NotComparable(
                self.keys[x].to_string(),
                self.keys[y].to_string(),
            ));
        }
        let down = self.down_closure(y);
        Ok(up.ones().filter(|&z| down.get(z)).collect())
    }

    /// The induced subposet `[x, y]`, keeping ranks and labels.
    pub fn interval(&self, x: NodeId, y: NodeId) -> Result<RankedHasse<K>> {
        let nodes = self.interval_nodes(x, y)?;
        let member: BitSet = {
            let mut b = BitSet::new(self.len());
            nodes.iter().for_each(|&z| b.set(z));
            b
        };
        let mut kept = Vec::new();
        let covers: Vec<(K, K)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| member.get(a) && member.get(b))
            .map(|(e, &(a, b))| {
                kept.push(e);
                (self.keys[a].clone(), self.keys[b].clone())
            })
            .collect();
        let mut sub = RankedHasse::from_covers(
            nodes.iter().map(|&z| (self.keys[z].clone(), self.ranks[z])),
            covers,
        )?;
        if let Some(labels) = &self.labels {
            let by_key: HashMap<(NodeId, NodeId), Label> = kept
                .iter()
                .map(|&e| {
                    let (a, b) = self.edges[e];
                    let sa = sub.index[&self.keys[a]];
                    let sb = sub.index[&self.keys[b]];
                    ((sa, sb), labels[e])
                })
                .collect();
            sub.labels = Some(sub.edges.iter().map(|ab| by_key[ab]).collect());
        }
        Ok(sub)
    }

    /// Every saturated chain from `x` to `y`, as node ids.
    pub fn saturated_chains(&self, x: NodeId, y: NodeId) -> Result<Vec<Vec<NodeId>>> {
        let nodes = self.interval_nodes(x, y)?;
        let mut member = BitSet::new(self.len());
        nodes.iter().for_each(|&z| member.set(z));
        let mut out = Vec::new();
        let mut path = vec![x];
        self.extend_chains(y, &member, &mut path, &mut out);
        Ok(out)
    }

    fn extend_chains(
        &self,
        y: NodeId,
        member: &BitSet,
        path: &mut Vec<NodeId>,
        out: &mut Vec<Vec<NodeId>>,
    ) {
        let last = *path.last().unwrap();
        if last == y {
            out.push(path.clone());
            return;
        }
        for &w in &self.up[last] {
            if member.get(w) {
                path.push(w);
                self.extend_chains(y, member, path, out);
                path.pop();
            }
        }
    }

    /// All rank-2 intervals reachable through covers, split into diamonds
    /// (exactly two midpoints) and violations.
    pub fn find_diamonds(&self) -> DiamondReport {
        let mut diamonds = Vec::new();
        let mut violations = Vec::new();
        for bottom in 0..self.len() {
            let mut mids: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
            for &m in &self.up[bottom] {
                for &t in &self.up[m] {
                    mids.entry(t).or_default().push(m);
                }
            }
            for (top, mut m) in mids {
                m.sort_unstable();
                if m.len() == 2 {
                    diamonds.push(Diamond {
                        bottom,
                        mid1: m[0],
                        mid2: m[1],
                        top,
                    });
                } else {
                    violations.push(DiamondViolation {
                        bottom,
                        top,
                        midpoints: m,
                    });
                }
            }
        }
        DiamondReport {
            diamonds,
            violations,
        }
    }

    /// `Σ_{z ∈ [x, y]} (-1)^{rank z}`; zero for every non-trivial interval
    /// of an Eulerian poset.
    pub fn alternating_rank_sum(&self, x: NodeId, y: NodeId) -> Result<i64> {
        Ok(self
            .interval_nodes(x, y)?
            .into_iter()
            .map(|z| if self.ranks[z] % 2 == 0 { 1 } else { -1 })
            .sum())
    }
}

/// `bottom ⋖ mid1, mid2 ⋖ top` with `mid1 < mid2` as node ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub bottom: NodeId,
    pub mid1: NodeId,
    pub mid2: NodeId,
    pub top: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondViolation {
    pub bottom: NodeId,
    pub top: NodeId,
    pub midpoints: Vec<NodeId>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DiamondReport {
    pub diamonds: Vec<Diamond>,
    pub violations: Vec<DiamondViolation>,
}

impl DiamondReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Bruhat order on `S_n`, graded by inversions.
pub fn symmetric_hasse(n: usize) -> Result<RankedHasse<Permutation>> {
    RankedHasse::build(Permutation::all(n), |s| s.inv_count(), |a, b| a.bruhat_leq(b))
}

/// Induced Bruhat order on involutions, graded by `l_I`.
pub fn involution_hasse(n: usize) -> Result<RankedHasse<Involution>> {
    RankedHasse::build(Involution::all(n), |s| s.length_i(), |a, b| a.bruhat_leq(b))
}

/// Positions `(i, j)`, `i < j`, with `upper = lower · t_{i,j}`, for a cover
/// of `S_n`.
pub fn edelman_label(lower: &Permutation, upper: &Permutation) -> Result<Label> {
    let err = || Error::NotATranspositionCover(lower.to_string(), upper.to_string());
    if lower.len() != upper.len() || upper.inv_count() != lower.inv_count() + 1 {
        return Err(err());
    }
    let diff: Vec<usize> = (1..=lower.len()).filter(|&i| lower.at(i) != upper.at(i)).collect();
    match diff.as_slice() {
        &[i, j] if lower.swap_positions(i, j) == *upper => Ok((i, j)),
        _ => Err(err()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElFailure {
    pub bottom: NodeId,
    pub top: NodeId,
    pub increasing_chains: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ElReport {
    pub intervals_checked: usize,
    pub failures: Vec<ElFailure>,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the EL property of `labels` (one per edge of `h`) on every
/// interval `[x, y]`, `x < y`: exactly one saturated chain has a weakly
/// increasing label word, and its word is strictly the lexicographically
/// smallest.
pub fn el_check<K: NodeKey>(h: &RankedHasse<K>, labels: &[Label]) -> ElReport {
    assert_eq!(labels.len(), h.edges.len(), "one label per cover edge");
    let above = h.closure();
    let n = h.len();
    let mut below = vec![BitSet::new(n); n];
    for (x, set) in above.iter().enumerate() {
        for y in set.ones() {
            below[y].set(x);
        }
    }
    let label = |a: NodeId, b: NodeId| labels[h.edge_index[&(a, b)]];
    let mut report = ElReport::default();
    for x in 0..n {
        for y in above[x].ones().filter(|&y| y != x) {
            report.intervals_checked += 1;
            let inside = |z: NodeId| above[x].get(z) && below[y].get(z);

            // Weakly increasing chains, tracked by last label.
            let mut inc: HashMap<NodeId, BTreeMap<Label, u64>> = HashMap::new();
            let mut frontier = vec![x];
            let mut inc_total = 0u64;
            let mut start: BTreeMap<Label, u64> = BTreeMap::new();
            start.insert((0, 0), 1);
            inc.insert(x, start);
            for _ in h.ranks[x]..h.ranks[y] {
                let mut next = Vec::new();
                for &z in &frontier {
                    let states = inc.remove(&z).unwrap_or_default();
                    for &w in h.up[z].iter().filter(|&&w| inside(w)) {
                        let l = label(z, w);
                        let c: u64 = states.range(..=l).map(|(_, c)| c).sum();
                        if c > 0 {
                            let entry = inc.entry(w).or_default();
                            if entry.is_empty() {
                                next.push(w);
                            }
                            *entry.entry(l).or_default() += c;
                        }
                    }
                }
                frontier = next;
            }
            if let Some(states) = inc.get(&y) {
                inc_total = states.values().sum();
            }

            // Lexicographically smallest word, with its multiplicity.
            let mut current: BTreeMap<NodeId, u64> = BTreeMap::from([(x, 1)]);
            let mut word = Vec::new();
            while !current.contains_key(&y) {
                let min = current
                    .keys()
                    .flat_map(|&z| h.up[z].iter().filter(|&&w| inside(w)).map(move |&w| label(z, w)))
                    .min()
                    .expect("graded interval always extends to its top");
                let mut next: BTreeMap<NodeId, u64> = BTreeMap::new();
                for (&z, &c) in &current {
                    for &w in h.up[z].iter().filter(|&&w| inside(w)) {
                        if label(z, w) == min {
                            *next.entry(w).or_default() += c;
                        }
                    }
                }
                word.push(min);
                current = next;
            }
            let lex_min_count = current[&y];
            let lex_min_increasing = word.windows(2).all(|w| w[0] <= w[1]);

            let reason = if inc_total != 1 {
                Some(format!("{inc_total} weakly increasing chains"))
            } else if !lex_min_increasing {
                Some("increasing chain is not lexicographically first".to_string())
            } else if lex_min_count != 1 {
                Some(format!("{lex_min_count} chains share the smallest word"))
            } else {
                None
            };
            if let Some(reason) = reason {
                report.failures.push(ElFailure {
                    bottom: x,
                    top: y,
                    increasing_chains: inc_total,
                    reason,
                });
            }
        }
    }
    report
}
