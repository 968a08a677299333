//! Eulerian classification and structural predicates.

use std::collections::HashMap;

use serde::Serialize;

use super::{ElementId, FinitePoset, PosetError};
use crate::generators::{boolean_lattice_unchecked, cube_face_lattice_unchecked};

/// Why a poset fails to be lower (or locally) Eulerian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum EulerianFailure {
    NoMinimum,
    NotLocallyGraded { x: String, y: String },
    MobiusParity { x: String, y: String, mobius: i64, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub is_meet_semilattice: bool,
    pub is_simplicial: bool,
    pub is_cubical: bool,
    pub is_graded: bool,
}

fn parity(r: usize) -> i64 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl FinitePoset {
    /// `None` when the poset is lower Eulerian, otherwise the first failure.
    pub fn lower_eulerian_failure(&self) -> Option<EulerianFailure> {
        if self.minimum().is_none() {
            return Some(EulerianFailure::NoMinimum);
        }
        self.locally_eulerian_failure()
    }

    pub fn is_lower_eulerian(&self) -> bool {
        self.lower_eulerian_failure().is_none()
    }

    /// `None` when every closed interval is graded with `μ = (-1)^ρ`.
    pub fn locally_eulerian_failure(&self) -> Option<EulerianFailure> {
        let mu = self.mobius();
        for &x in self.linear_extension() {
            let (longest, shortest) = self.path_lengths_from(x);
            for &(y, m) in mu.row(x) {
                let (x_l, y_l) = (self.label(x).to_owned(), self.label(y).to_owned());
                if longest[y] != shortest[y] {
                    return Some(EulerianFailure::NotLocallyGraded { x: x_l, y: y_l });
                }
                if m != parity(longest[y]) {
                    return Some(EulerianFailure::MobiusParity { x: x_l, y: y_l, mobius: m, rank: longest[y] });
                }
            }
        }
        None
    }

    pub fn is_locally_eulerian(&self) -> bool {
        self.locally_eulerian_failure().is_none()
    }

    /// Whether every pair of elements has a greatest lower bound.
    pub fn is_meet_semilattice(&self) -> bool {
        self.meet_failure().is_none()
    }

    /// A pair without a greatest lower bound.
    pub fn meet_failure(&self) -> Option<(ElementId, ElementId)> {
        let n = self.len();
        let down_incl: Vec<_> = (0..n)
            .map(|x| {
                let mut s = self.strictly_below(x).clone();
                s.insert(x);
                s
            })
            .collect();
        let sizes: Vec<usize> = down_incl.iter().map(|s| s.count_ones(..)).collect();
        for x in 0..n {
            for y in x + 1..n {
                let mut common = down_incl[x].clone();
                common.intersect_with(&down_incl[y]);
                let best = common.ones().max_by_key(|&m| (sizes[m], std::cmp::Reverse(m)));
                match best {
                    Some(m) if common.is_subset(&down_incl[m]) => {}
                    _ => return Some((x, y)),
                }
            }
        }
        None
    }

    fn lower_intervals_match(&self, template: impl Fn(usize) -> FinitePoset) -> Result<bool, PosetError> {
        let m = self.minimum().ok_or(PosetError::NoMinimum)?;
        let mut cache: HashMap<usize, FinitePoset> = HashMap::new();
        for x in self.elements() {
            let lower = self.interval(m, x)?;
            let Ok(ranks) = lower.rank_profile() else {
                return Ok(false);
            };
            let r = ranks.top_rank();
            let t = cache.entry(r).or_insert_with(|| template(r));
            if !is_isomorphic(&lower, t) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every lower interval `[0̂, x]` is a Boolean lattice.
    pub fn is_simplicial(&self) -> Result<bool, PosetError> {
        self.lower_intervals_match(boolean_lattice_unchecked)
    }

    /// Every lower interval `[0̂, x]` is the face lattice of a cube (with the
    /// empty face at the bottom).
    pub fn is_cubical(&self) -> Result<bool, PosetError> {
        self.lower_intervals_match(|r| match r {
            0 => FinitePoset::from_covers(&["0"], &[] as &[(&str, &str)]).unwrap(),
            r => cube_face_lattice_unchecked(r - 1),
        })
    }

    pub fn structural_predicates(&self) -> Result<StructuralPredicates, PosetError> {
        Ok(StructuralPredicates {
            is_meet_semilattice: self.is_meet_semilattice(),
            is_simplicial: self.is_simplicial()?,
            is_cubical: self.is_cubical()?,
            is_graded: self.is_graded(),
        })
    }
}

/// Poset isomorphism by backtracking over cover-preserving partial maps.
///
/// Elements are assigned in an order where each new element is adjacent in
/// the Hasse diagram to as many assigned ones as possible; candidates must
/// match height and cover degrees.
pub fn is_isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
    let n = a.len();
    if n != b.len() || a.cover_count() != b.cover_count() {
        return false;
    }
    let sig = |p: &FinitePoset, x: ElementId| (p.height(x), p.down_covers(x).len(), p.up_covers(x).len());
    let mut sa: Vec<_> = a.elements().map(|x| sig(a, x)).collect();
    let mut sb: Vec<_> = b.elements().map(|x| sig(b, x)).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }

    // Assignment order.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = a
            .elements()
            .filter(|&x| !placed[x])
            .max_by_key(|&x| (links[x], std::cmp::Reverse(a.height(x)), std::cmp::Reverse(x)))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &y in a.up_covers(next).iter().chain(a.down_covers(next)) {
            links[y] += 1;
        }
    }

    let mut by_sig: HashMap<(usize, usize, usize), Vec<ElementId>> = HashMap::new();
    for y in b.elements() {
        by_sig.entry(sig(b, y)).or_default().push(y);
    }

    struct Search<'p> {
        a: &'p FinitePoset,
        b: &'p FinitePoset,
        order: Vec<ElementId>,
        fwd: Vec<Option<ElementId>>,
        inv: Vec<Option<ElementId>>,
        by_sig: HashMap<(usize, usize, usize), Vec<ElementId>>,
    }

    impl Search<'_> {
        fn consistent(&self, x: ElementId, t: ElementId) -> bool {
            let mut mapped_up = 0;
            for &u in self.a.up_covers(x) {
                if let Some(fu) = self.fwd[u] {
                    if !self.b.up_covers(t).contains(&fu) {
                        return false;
                    }
                    mapped_up += 1;
                }
            }
            let mut mapped_down = 0;
            for &d in self.a.down_covers(x) {
                if let Some(fd) = self.fwd[d] {
                    if !self.b.down_covers(t).contains(&fd) {
                        return false;
                    }
                    mapped_down += 1;
                }
            }
            let image_up = self.b.up_covers(t).iter().filter(|&&u| self.inv[u].is_some()).count();
            let image_down = self.b.down_covers(t).iter().filter(|&&d| self.inv[d].is_some()).count();
            mapped_up == image_up && mapped_down == image_down
        }

        fn candidates(&self, x: ElementId) -> Vec<ElementId> {
            // Prefer neighbours of an already-mapped cover neighbour.
            for &u in self.a.up_covers(x) {
                if let Some(fu) = self.fwd[u] {
                    return self.b.down_covers(fu).to_vec();
                }
            }
            for &d in self.a.down_covers(x) {
                if let Some(fd) = self.fwd[d] {
                    return self.b.up_covers(fd).to_vec();
                }
            }
            let s = (self.a.height(x), self.a.down_covers(x).len(), self.a.up_covers(x).len());
            self.by_sig.get(&s).cloned().unwrap_or_default()
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let x = self.order[depth];
            let sx = (self.a.height(x), self.a.down_covers(x).len(), self.a.up_covers(x).len());
            for t in self.candidates(x) {
                if self.inv[t].is_some() {
                    continue;
                }
                let st = (self.b.height(t), self.b.down_covers(t).len(), self.b.up_covers(t).len());
                if st != sx || !self.consistent(x, t) {
                    continue;
                }
                self.fwd[x] = Some(t);
                self.inv[t] = Some(x);
                if self.run(depth + 1) {
                    return true;
                }
                self.fwd[x] = None;
                self.inv[t] = None;
            }
            false
        }
    }

    let mut search = Search { a, b, order, fwd: vec![None; n], inv: vec![None; n], by_sig };
    search.run(0)
}
