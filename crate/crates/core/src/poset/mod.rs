//! Finite posets stored as an irredundant cover relation plus cached
//! reachability bitsets.

mod derived;
mod mobius;
mod predicates;
mod rank;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use mobius::MobiusTable;
pub use predicates::{is_isomorphic, EulerianFailure, StructuralPredicates};
pub use rank::RankProfile;

/// Index of an element inside a [`FinitePoset`]. Indices follow the
/// lexicographic order of the element labels.
pub type ElementId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("empty poset")]
    EmptyPoset,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate cover ({0}, {1})")]
    DuplicateCover(String, String),
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("redundant cover ({a}, {b}): {a} < {witness} < {b}")]
    RedundantCover { a: String, b: String, witness: String },
    #[error("interval [{0}, {1}] has maximal chains of different lengths")]
    NotLocallyGraded(String, String),
    #[error("poset is not lower graded")]
    NotLowerGraded,
    #[error("poset has no minimum element")]
    NoMinimum,
    #[error("rank collapse: {0}")]
    RankCollapse(String),
    #[error("poset is not lower Eulerian: {0}")]
    NotLowerEulerian(String),
}

/// A finite poset.
///
/// Immutable after construction. Rank data and the Möbius table are computed
/// lazily and cached; the caches are write-once so shared references can be
/// used from several threads.
#[derive(Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
    up: Vec<Vec<ElementId>>,
    down: Vec<Vec<ElementId>>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    height: Vec<usize>,
    linear: Vec<ElementId>,
    rank_cache: OnceLock<Result<RankProfile, PosetError>>,
    mobius_cache: OnceLock<MobiusTable>,
}

impl FinitePoset {
    /// Builds a poset from element labels and cover pairs `(a, b)` meaning
    /// `a` is covered by `b`. Redundant covers are rejected.
    pub fn from_covers<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        if elements.is_empty() {
            return Err(PosetError::EmptyPoset);
        }
        let mut labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateElement(w[0].clone()));
            }
        }
        let index: HashMap<String, ElementId> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| PosetError::UnknownElement(s.to_owned()));
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(PosetError::CycleDetected(labels[a].clone()));
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateCover(labels[w[0].0].clone(), labels[w[0].1].clone()));
            }
        }
        Self::assemble(labels, index, &pairs, true)
    }

    /// Builds from index pairs already known to be acyclic and irredundant.
    pub(crate) fn from_trusted(labels: Vec<String>, mut pairs: Vec<(usize, usize)>) -> Self {
        // Relabel so indices follow label order.
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut new_index = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
        for p in pairs.iter_mut() {
            *p = (new_index[p.0], new_index[p.1]);
        }
        pairs.sort_unstable();
        let index = sorted.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Self::assemble(sorted, index, &pairs, cfg!(debug_assertions)).expect("trusted cover data must form a poset")
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, ElementId>,
        pairs: &[(usize, usize)],
        check_redundant: bool,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in pairs {
            up[a].push(b);
            down[b].push(a);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }

        // Kahn's algorithm; yields heights as a by-product.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut height = vec![0usize; n];
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &y in up[x].iter().rev() {
                height[y] = height[y].max(height[x] + 1);
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(PosetError::CycleDetected(labels[stuck].clone()));
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            for &c in &up[x] {
                set.insert(c);
                set.union_with(&above[c]);
            }
            above[x] = set;
        }

        if check_redundant {
            for &(a, b) in pairs {
                if let Some(&z) = up[a].iter().find(|&&z| z != b && above[z].contains(b)) {
                    return Err(PosetError::RedundantCover {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        witness: labels[z].clone(),
                    });
                }
            }
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in above[x].ones() {
                below[y].insert(x);
            }
        }

        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (height[i], i));

        Ok(FinitePoset {
            labels,
            index,
            up,
            down,
            above,
            below,
            height,
            linear,
            rank_cache: OnceLock::new(),
            mobius_cache: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    /// Elements in a linear extension (by height, then label).
    pub fn linear_extension(&self) -> &[ElementId] {
        &self.linear
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        self.above[x].contains(y)
    }

    pub fn le(&self, x: ElementId, y: ElementId) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    pub fn up_covers(&self, x: ElementId) -> &[ElementId] {
        &self.up[x]
    }

    pub fn down_covers(&self, x: ElementId) -> &[ElementId] {
        &self.down[x]
    }

    /// Strict up-set `{y : x < y}`.
    pub fn strictly_above(&self, x: ElementId) -> &FixedBitSet {
        &self.above[x]
    }

    /// Strict down-set `{y : y < x}`.
    pub fn strictly_below(&self, x: ElementId) -> &FixedBitSet {
        &self.below[x]
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: ElementId) -> usize {
        self.height[x]
    }

    /// All cover pairs in index order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        (0..self.len()).flat_map(|a| self.up[a].iter().map(move |&b| (a, b))).collect()
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn minimal_elements(&self) -> Vec<ElementId> {
        (0..self.len()).filter(|&x| self.down[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElementId> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn minimum(&self) -> Option<ElementId> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn maximum(&self) -> Option<ElementId> {
        match self.maximal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// The closed interval `[x, y]` as an element set (empty when `x ≰ y`).
    pub fn interval_set(&self, x: ElementId, y: ElementId) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        if self.le(x, y) {
            s.union_with(&self.above[x]);
            s.intersect_with(&self.below[y]);
            s.insert(x);
            s.insert(y);
        }
        s
    }

    /// The open interval `(x, y)` as an element set.
    pub fn open_interval_set(&self, x: ElementId, y: ElementId) -> FixedBitSet {
        let mut s = self.above[x].clone();
        s.intersect_with(&self.below[y]);
        s
    }

    /// Cover pairs of the subposet induced on `keep`, in local indices of
    /// the sorted `keep` list.
    pub fn induced_covers(&self, keep: &FixedBitSet) -> (Vec<ElementId>, Vec<(usize, usize)>) {
        let members: Vec<ElementId> = keep.ones().collect();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let mut pairs = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            let mut cand = self.above[a].clone();
            cand.intersect_with(keep);
            for b in cand.ones() {
                if cand.is_disjoint(&self.below[b]) {
                    pairs.push((i, local[b]));
                }
            }
        }
        (members, pairs)
    }

    /// The subposet induced on a nonempty element set.
    pub fn induced(&self, keep: &FixedBitSet) -> Result<FinitePoset, PosetError> {
        if keep.count_ones(..) == 0 {
            return Err(PosetError::EmptyPoset);
        }
        let (members, pairs) = self.induced_covers(keep);
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        Ok(FinitePoset::from_trusted(labels, pairs))
    }

    /// The closed interval `[x, y]` as a poset.
    pub fn interval(&self, x: ElementId, y: ElementId) -> Result<FinitePoset, PosetError> {
        self.induced(&self.interval_set(x, y))
    }

    pub fn element_set(&self, elems: impl IntoIterator<Item = ElementId>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let mut l = base.to_owned();
        while self.index.contains_key(&l) {
            l.push('\'');
        }
        l
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        // Indices follow label order, so equal labels and cover lists mean
        // identical posets.
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> =
            self.covers().into_iter().map(|(a, b)| (self.label(a), self.label(b))).collect();
        f.debug_struct("FinitePoset").field("elements", &self.labels).field("covers", &covers).finish()
    }
}
