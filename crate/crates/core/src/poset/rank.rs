use serde::Serialize;

use super::{ElementId, FinitePoset, PosetError};

/// Rank data of a locally graded poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    ranks: Vec<usize>,
    top_rank: usize,
    has_minimum: bool,
}

impl RankProfile {
    /// Rank of `x`: the length of any maximal chain of `[0̂, x]` when a minimum
    /// exists, otherwise the height of `x`.
    pub fn rank(&self, x: ElementId) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Largest rank of an element.
    pub fn top_rank(&self) -> usize {
        self.top_rank
    }

    pub fn has_minimum(&self) -> bool {
        self.has_minimum
    }

    /// `ρ(x, y)` for `x ≤ y`. Only meaningful when the poset has a minimum;
    /// use [`FinitePoset::interval_rank`] otherwise.
    pub fn interval_rank(&self, x: ElementId, y: ElementId) -> usize {
        debug_assert!(self.has_minimum);
        self.ranks[y] - self.ranks[x]
    }

    /// Number of elements of each rank, `counts[i] = #{x : ρ(x) = i}`.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.top_rank + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }
}

impl FinitePoset {
    /// Longest and shortest cover-path lengths from `x` to every element of
    /// its up-set (`usize::MAX` elsewhere).
    pub(crate) fn path_lengths_from(&self, x: ElementId) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut longest = vec![usize::MAX; n];
        let mut shortest = vec![usize::MAX; n];
        longest[x] = 0;
        shortest[x] = 0;
        for &y in self.linear_extension() {
            if longest[y] == usize::MAX {
                continue;
            }
            for &z in self.up_covers(y) {
                let (l, s) = (longest[y] + 1, shortest[y] + 1);
                if longest[z] == usize::MAX || l > longest[z] {
                    longest[z] = l;
                }
                if s < shortest[z] {
                    shortest[z] = s;
                }
            }
        }
        (longest, shortest)
    }

    /// First interval (in linear-extension order) with maximal chains of two
    /// different lengths.
    pub fn local_grading_witness(&self) -> Option<(ElementId, ElementId)> {
        for &x in self.linear_extension() {
            let (longest, shortest) = self.path_lengths_from(x);
            for &y in self.linear_extension() {
                if longest[y] != usize::MAX && longest[y] != shortest[y] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Rank data, or `NotLocallyGraded` naming an offending interval.
    pub fn rank_profile(&self) -> Result<&RankProfile, PosetError> {
        self.rank_cache
            .get_or_init(|| {
                if let Some((x, y)) = self.local_grading_witness() {
                    return Err(PosetError::NotLocallyGraded(self.label(x).to_owned(), self.label(y).to_owned()));
                }
                let ranks = self.height.clone();
                let top_rank = ranks.iter().copied().max().unwrap_or(0);
                Ok(RankProfile { ranks, top_rank, has_minimum: self.minimum().is_some() })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Rank profile of a lower graded poset (minimum + locally graded).
    pub fn lower_rank_profile(&self) -> Result<&RankProfile, PosetError> {
        if self.minimum().is_none() {
            return Err(PosetError::NotLowerGraded);
        }
        self.rank_profile().map_err(|_| PosetError::NotLowerGraded)
    }

    /// Length of the longest chain of `[x, y]`, or `None` when `x ≰ y`.
    pub fn interval_rank(&self, x: ElementId, y: ElementId) -> Option<usize> {
        if !self.le(x, y) {
            return None;
        }
        let (longest, _) = self.path_lengths_from(x);
        Some(longest[y])
    }

    /// Graded in the sense that every maximal chain of the whole poset has the
    /// same length.
    pub fn is_graded(&self) -> bool {
        let n = self.len();
        let mut longest = vec![0usize; n];
        let mut shortest = vec![0usize; n];
        for &y in self.linear_extension() {
            let downs = self.down_covers(y);
            if downs.is_empty() {
                continue;
            }
            longest[y] = downs.iter().map(|&z| longest[z] + 1).max().unwrap();
            shortest[y] = downs.iter().map(|&z| shortest[z] + 1).min().unwrap();
        }
        let tops = self.maximal_elements();
        let lmax = tops.iter().map(|&t| longest[t]).max().unwrap_or(0);
        tops.iter().all(|&t| longest[t] == lmax && shortest[t] == lmax)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_ranks() {
        let p = FinitePoset::from_covers(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let r = p.rank_profile().unwrap();
        assert_eq!(r.ranks(), &[0, 1, 2, 3]);
        assert_eq!(r.top_rank(), 3);
    }

    #[test]
    fn unequal_chains_are_not_locally_graded() {
        // [0, c] has maximal chains 0<a<c and 0<b<b2<c.
        let p = FinitePoset::from_covers(
            &["0", "a", "b", "b2", "c"],
            &[("0", "a"), ("a", "c"), ("0", "b"), ("b", "b2"), ("b2", "c")],
        )
        .unwrap();
        assert_eq!(p.rank_profile().unwrap_err(), PosetError::NotLocallyGraded("0".into(), "c".into()));
        assert!(!p.is_graded());
    }

    #[test]
    fn square_face_lattice_top_rank() {
        let els = ["e", "v1", "v2", "v3", "v4", "a", "b", "c", "d", "t"];
        let covers = [
            ("e", "v1"),
            ("e", "v2"),
            ("e", "v3"),
            ("e", "v4"),
            ("v1", "a"),
            ("v2", "a"),
            ("v2", "b"),
            ("v3", "b"),
            ("v3", "c"),
            ("v4", "c"),
            ("v4", "d"),
            ("v1", "d"),
            ("a", "t"),
            ("b", "t"),
            ("c", "t"),
            ("d", "t"),
        ];
        let p = FinitePoset::from_covers(&els, &covers).unwrap();
        assert_eq!(p.rank_profile().unwrap().top_rank(), 3);
        assert!(p.is_graded());
    }

    #[test]
    fn min_less_interval_rank() {
        // a < b and c < d < b: [a,b] has rank 1, [c,b] rank 2.
        let p = FinitePoset::from_covers(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d"), ("d", "b")]).unwrap();
        let (a, b, c) = (0, 1, 2);
        assert_eq!(p.interval_rank(a, b), Some(1));
        assert_eq!(p.interval_rank(c, b), Some(2));
        assert_eq!(p.interval_rank(b, a), None);
        assert!(p.rank_profile().is_ok());
        assert!(!p.is_graded());
    }
}
