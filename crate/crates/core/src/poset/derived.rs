//! Posets derived from a given one: attached extrema, truncations, up-sets,
//! the interval poset and the dual.

use fixedbitset::FixedBitSet;

use super::{ElementId, FinitePoset, PosetError};

pub const TOP_LABEL: &str = "^top";
pub const BOTTOM_LABEL: &str = "^bottom";

impl FinitePoset {
    fn extended(&self, new_label: String, attach: &[ElementId], new_above: bool) -> FinitePoset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(new_label);
        let mut pairs = self.covers();
        pairs.extend(attach.iter().map(|&x| if new_above { (x, n) } else { (n, x) }));
        FinitePoset::from_trusted(labels, pairs)
    }

    /// `P̂`: a new maximum above every element.
    pub fn attach_max(&self) -> FinitePoset {
        self.extended(self.fresh_label(TOP_LABEL), &self.maximal_elements(), true)
    }

    /// A new minimum below every element.
    pub fn attach_min(&self) -> FinitePoset {
        self.extended(self.fresh_label(BOTTOM_LABEL), &self.minimal_elements(), false)
    }

    /// `P̄`: the poset without its minimum.
    pub fn remove_min(&self) -> Result<FinitePoset, PosetError> {
        let m = self.minimum().ok_or(PosetError::NoMinimum)?;
        let mut keep = FixedBitSet::with_capacity(self.len());
        keep.insert_range(..);
        keep.set(m, false);
        self.induced(&keep)
    }

    /// Elements covering the minimum.
    pub fn atoms(&self) -> Result<Vec<ElementId>, PosetError> {
        let m = self.minimum().ok_or(PosetError::NoMinimum)?;
        Ok(self.up_covers(m).to_vec())
    }

    /// `P_{≥x}` as a poset with minimum `x`.
    pub fn upset(&self, x: ElementId) -> FinitePoset {
        let mut keep = self.strictly_above(x).clone();
        keep.insert(x);
        self.induced(&keep).expect("up-set contains x")
    }

    /// Number of atoms below `y`.
    pub fn alpha_of(&self, y: ElementId) -> Result<usize, PosetError> {
        Ok(self.atoms()?.into_iter().filter(|&a| self.le(a, y)).count())
    }

    /// Minimum over maximal elements `y` of the number of atoms below `y`.
    pub fn alpha(&self) -> Result<usize, PosetError> {
        self.minimum().ok_or(PosetError::NoMinimum)?;
        let tops = self.maximal_elements();
        tops.iter()
            .map(|&y| self.alpha_of(y))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .min()
            .ok_or(PosetError::EmptyPoset)
    }

    /// `Q`: drop all maximal elements.
    pub fn remove_maximal(&self) -> Result<FinitePoset, PosetError> {
        let m = self.minimum().ok_or(PosetError::NoMinimum)?;
        let keep = self.element_set(self.elements().filter(|&x| !self.up_covers(x).is_empty()));
        if !keep.contains(m) {
            return Err(PosetError::RankCollapse("removing maximal elements leaves nothing".into()));
        }
        self.induced(&keep)
    }

    /// `R`-style truncation: drop all atoms.
    pub fn remove_atoms(&self) -> Result<FinitePoset, PosetError> {
        let atoms = self.element_set(self.atoms()?);
        let keep = self.element_set(self.elements().filter(|&x| !atoms.contains(x)));
        self.induced(&keep)
    }

    /// `ψ(P) = Σ_x (-1)^{ρ(x)-1}` over a lower graded poset.
    pub fn psi(&self) -> Result<i64, PosetError> {
        let ranks = self.lower_rank_profile()?;
        Ok(ranks.ranks().iter().map(|&r| if r % 2 == 0 { -1 } else { 1 }).sum())
    }

    /// `χ̃(P) = μ_{P̂}(0̂, 1̂)`.
    pub fn chi_tilde(&self) -> Result<i64, PosetError> {
        let m = self.minimum().ok_or(PosetError::NoMinimum)?;
        let hat = self.attach_max();
        let top = hat.maximum().expect("attached maximum");
        let bottom = hat.index_of(self.label(m)).unwrap();
        Ok(hat.mobius().at(bottom, top))
    }

    /// Closed intervals `[x, y]` ordered by containment. Element labels are
    /// the JSON encoding of the endpoint label pair.
    pub fn interval_poset(&self) -> FinitePoset {
        let mut ids = Vec::new();
        let mut slot = std::collections::HashMap::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.le(x, y) {
                    slot.insert((x, y), ids.len());
                    ids.push((x, y));
                }
            }
        }
        let labels: Vec<String> = ids.iter().map(|&(x, y)| interval_label(self.label(x), self.label(y))).collect();
        let mut pairs = Vec::new();
        for (i, &(x, y)) in ids.iter().enumerate() {
            for &w in self.down_covers(x) {
                pairs.push((i, slot[&(w, y)]));
            }
            for &w in self.up_covers(y) {
                pairs.push((i, slot[&(x, w)]));
            }
        }
        FinitePoset::from_trusted(labels, pairs)
    }

    /// The order-reversed poset.
    pub fn dual(&self) -> FinitePoset {
        let pairs = self.covers().into_iter().map(|(a, b)| (b, a)).collect();
        FinitePoset::from_trusted(self.labels.clone(), pairs)
    }
}

/// Label of the interval `[x, y]` inside an interval poset.
pub fn interval_label(x: &str, y: &str) -> String {
    serde_json::to_string(&[x, y]).expect("strings serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> FinitePoset {
        FinitePoset::from_covers(&["0", "a", "b", "ab"], &[("0", "a"), ("0", "b"), ("a", "ab"), ("b", "ab")]).unwrap()
    }

    #[test]
    fn attach_max_to_antichain() {
        let p = FinitePoset::from_covers(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let hat = p.attach_max();
        assert_eq!(hat.len(), 3);
        let top = hat.maximum().unwrap();
        assert_eq!(hat.label(top), TOP_LABEL);
        assert_eq!(hat.down_covers(top).len(), 2);
    }

    #[test]
    fn remove_min_of_b2() {
        let bar = b2().remove_min().unwrap();
        assert_eq!(bar.len(), 3);
        assert_eq!(bar.maximum(), bar.index_of("ab"));
        assert_eq!(bar.minimal_elements().len(), 2);
        let anti = FinitePoset::from_covers(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(anti.remove_min().unwrap_err(), PosetError::NoMinimum);
    }

    #[test]
    fn fresh_labels_avoid_collisions() {
        let p = FinitePoset::from_covers(&[TOP_LABEL], &[] as &[(&str, &str)]).unwrap();
        let hat = p.attach_max();
        assert_eq!(hat.len(), 2);
        assert!(hat.index_of("^top'").is_some());
    }

    #[test]
    fn interval_poset_of_two_chain() {
        let p = FinitePoset::from_covers(&["x", "y"], &[("x", "y")]).unwrap();
        let int = p.interval_poset();
        assert_eq!(int.len(), 3);
        let xx = int.index_of(&interval_label("x", "x")).unwrap();
        let yy = int.index_of(&interval_label("y", "y")).unwrap();
        let xy = int.index_of(&interval_label("x", "y")).unwrap();
        assert!(int.lt(xx, xy) && int.lt(yy, xy));
        assert!(!int.comparable(xx, yy));
    }

    #[test]
    fn dual_is_an_involution() {
        let p = b2();
        assert_eq!(p.dual().dual(), p);
        assert_ne!(p.dual(), p);
    }

    #[test]
    fn alpha_and_truncations() {
        let p = b2();
        assert_eq!(p.alpha().unwrap(), 2);
        let q = p.remove_maximal().unwrap();
        assert_eq!(q.len(), 3);
        let r = p.remove_atoms().unwrap();
        assert_eq!(r.len(), 2);
        let single = FinitePoset::from_covers(&["0"], &[] as &[(&str, &str)]).unwrap();
        assert!(matches!(single.remove_maximal(), Err(PosetError::RankCollapse(_))));
    }

    #[test]
    fn psi_and_chi_of_two_chain() {
        let p = FinitePoset::from_covers(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(p.psi().unwrap(), 0);
        assert_eq!(p.chi_tilde().unwrap(), 0);
    }
}
