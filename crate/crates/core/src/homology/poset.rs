//! Homological properties of posets: the Cohen-Macaulay test by intervals,
//! the classes `ω(y)` and the maps `ρ_x`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::chain::{dense_rank, ChainComplex};
use super::classify::Witness;
use super::field::PrimeField;
use super::maps::{induced_map, rho_vertex_map, InducedMapReport};
use super::{reduced_homology, HomologyError};
use crate::complex::{order_complex_of, order_complex_open_interval};
use crate::poset::{ElementId, FinitePoset, PosetError};

/// First obstruction to `Δ(P)` being Cohen-Macaulay.
///
/// `P` is Cohen-Macaulay iff `P̄` is (when `P` has a minimum), and a poset
/// `Q` is Cohen-Macaulay iff `Q̂ = Q ∪ {0̂, 1̂}` is graded and every open
/// interval `(x, y)` of `Q̂` has `H̃_i(Δ(x, y)) = 0` for `i < ρ(x, y) - 2`.
pub fn poset_cm_failure(poset: &FinitePoset, field: PrimeField) -> Option<Witness> {
    let with_min = if poset.minimum().is_some() { poset.clone() } else { poset.attach_min() };
    let hat = with_min.attach_max();
    let Ok(ranks) = hat.rank_profile() else {
        return Some(Witness::NotGraded);
    };
    for &x in hat.linear_extension() {
        for y in hat.strictly_above(x).ones() {
            let r = ranks.interval_rank(x, y);
            if r < 3 {
                continue;
            }
            let h = reduced_homology(&order_complex_open_interval(&hat, x, y), field);
            if let Some((&degree, &betti)) = h.betti.iter().find(|&(&k, &b)| k < r as isize - 2 && b != 0) {
                return Some(Witness::IntervalHomology {
                    x: hat.label(x).to_owned(),
                    y: hat.label(y).to_owned(),
                    degree,
                    betti,
                });
            }
        }
    }
    None
}

pub fn poset_is_cohen_macaulay(poset: &FinitePoset, field: PrimeField) -> bool {
    poset_cm_failure(poset, field).is_none()
}

/// Elements of `Q̄`: neither the minimum nor maximal.
pub(crate) fn q_bar_set(poset: &FinitePoset) -> Result<FixedBitSet, PosetError> {
    let m = poset.minimum().ok_or(PosetError::NoMinimum)?;
    Ok(poset.element_set(poset.elements().filter(|&x| x != m && !poset.up_covers(x).is_empty())))
}

/// The classes `ω(y)` for the maximal elements `y` of a poset of rank
/// `d ≥ 2`, in coordinates of a fixed basis of `H̃_{d-2}(Δ(Q̄))`.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaClasses {
    pub field: u32,
    /// `dim H̃_{d-2}(Δ(Q̄))`.
    pub homology_dim: usize,
    /// Maximal elements in label order.
    pub maximal: Vec<String>,
    pub vectors: Vec<Vec<u32>>,
}

impl OmegaClasses {
    /// Rank of the span of the classes with the given indices.
    pub fn span_rank(&self, which: &[usize]) -> usize {
        let rows: Vec<Vec<u32>> = which.iter().map(|&i| self.vectors[i].clone()).collect();
        dense_rank(PrimeField::new(self.field).expect("validated field"), &rows)
    }

    /// Walks the classes in `order` and keeps each one that raises the rank.
    pub fn greedy_basis(&self, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut chosen = Vec::new();
        for i in order {
            chosen.push(i);
            if self.span_rank(&chosen) < chosen.len() {
                chosen.pop();
            }
        }
        chosen
    }
}

/// `Ω(y)` is the image of `H̃_{d-2}(Δ(0̂, y)) → H̃_{d-2}(Δ(Q̄))`; each must
/// be one-dimensional, and `ω(y)` is the first nonzero column of the map.
pub fn omega_classes(poset: &FinitePoset, field: PrimeField) -> Result<OmegaClasses, HomologyError> {
    let ranks = poset.lower_rank_profile()?;
    let d = ranks.top_rank();
    if d < 2 {
        return Err(HomologyError::Precondition(format!("rank {d} < 2")));
    }
    let q_bar = q_bar_set(poset)?;
    let gamma = order_complex_of(poset, &q_bar);
    let whole = ChainComplex::of_complex(&gamma);
    let deg = d as isize - 2;
    let mut maximal = Vec::new();
    let mut vectors = Vec::new();
    let mut homology_dim = 0;
    for y in poset.maximal_elements() {
        let below: Vec<ElementId> = poset.strictly_below(y).ones().collect();
        // Vertex indices of Γ below y (Γ's vertices are Q̄'s labels, sorted).
        let inside: Vec<bool> = gamma
            .vertices()
            .iter()
            .map(|v| below.contains(&poset.index_of(v).expect("vertex is an element")))
            .collect();
        let sub =
            ChainComplex::from_cells(gamma.faces().iter().filter(|f| f.iter().all(|&v| inside[v as usize])).cloned());
        let map: InducedMapReport = induced_map(field, &sub, deg, &whole, deg, |f| Some((f.clone(), false)));
        homology_dim = map.codomain_dim;
        let label = poset.label(y).to_owned();
        if map.rank != 1 {
            return Err(HomologyError::OmegaNotOneDimensional(label, map.rank));
        }
        let col = (0..map.domain_dim)
            .find(|&j| map.matrix.iter().any(|row| row[j] != 0))
            .expect("rank one map has a nonzero column");
        vectors.push(map.matrix.iter().map(|row| field.from_i64(row[col])).collect());
        maximal.push(label);
    }
    Ok(OmegaClasses { field: field.characteristic(), homology_dim, maximal, vectors })
}

/// `ρ_x: H̃_{d-2}(Δ(Q̄)) → H̃_{d-3}(Δ(Q_{>x}))` for an atom `x`.
pub fn rho_atom_map(
    poset: &FinitePoset,
    atom: ElementId,
    field: PrimeField,
) -> Result<InducedMapReport, HomologyError> {
    let q_bar = q_bar_set(poset)?;
    if !q_bar.contains(atom) {
        return Err(HomologyError::Precondition(format!("`{}` is not a minimal element of Q̄", poset.label(atom))));
    }
    let gamma = order_complex_of(poset, &q_bar);
    rho_vertex_map(&gamma, poset.label(atom), field)
}
