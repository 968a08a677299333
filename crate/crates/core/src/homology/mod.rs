//! Reduced and relative simplicial homology over prime fields, induced maps,
//! and the Cohen-Macaulay family of classifiers.

mod chain;
mod classify;
mod field;
mod maps;
mod poset;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use chain::{dense_rank, ChainComplex, HomologyBasis, SparseVec};
pub use classify::{
    buchsbaum_criteria, classify, is_buchsbaum, is_buchsbaum_star, is_cohen_macaulay, is_doubly_cohen_macaulay,
    is_gorenstein_star, BuchsbaumCriteria, Classification, Verdict, Witness,
};
pub use field::{PrimeField, DEFAULT_CHARACTERISTIC, FIELD_ENV};
pub use maps::{induced_inclusion_map, induced_map, rho_vertex_map, InducedMapReport};
pub use poset::{omega_classes, poset_cm_failure, poset_is_cohen_macaulay, rho_atom_map, OmegaClasses};

use crate::complex::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("{0} is not a prime below 2^31")]
    InvalidField(u64),
    #[error("cannot parse field characteristic `{0}`")]
    InvalidFieldText(String),
    #[error("second complex is not a subcomplex of the first")]
    NotASubcomplex,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("Omega({0}) has dimension {1}, expected 1")]
    OmegaNotOneDimensional(String, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poset(#[from] crate::poset::PosetError),
}

/// Betti numbers of a complex or pair, keyed by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub field: u32,
    pub betti: BTreeMap<isize, usize>,
}

impl HomologyReport {
    pub fn betti(&self, dim: isize) -> usize {
        self.betti.get(&dim).copied().unwrap_or(0)
    }

    /// `Σ_i (-1)^i b_i`, which equals `χ̃` for reduced homology.
    pub fn alternating_sum(&self) -> i64 {
        self.betti.iter().map(|(&k, &b)| if k.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Betti numbers as a dense list starting at dimension `-1`.
    pub fn dense(&self) -> Vec<usize> {
        let top = self.betti.keys().next_back().copied().unwrap_or(-1);
        (-1..=top).map(|k| self.betti(k)).collect()
    }

    pub fn is_acyclic_below(&self, dim: isize) -> bool {
        self.betti.iter().all(|(&k, &b)| k >= dim || b == 0)
    }
}

pub fn reduced_homology(complex: &SimplicialComplex, field: PrimeField) -> HomologyReport {
    HomologyReport { field: field.characteristic(), betti: ChainComplex::of_complex(complex).betti(field) }
}

/// `H_*(Δ, Γ)`. Relative to the void complex this is unreduced homology
/// shifted off degree `-1`; relative to the empty face set it is reduced.
pub fn relative_homology(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    field: PrimeField,
) -> Result<HomologyReport, HomologyError> {
    Ok(HomologyReport { field: field.characteristic(), betti: ChainComplex::relative(delta, gamma)?.betti(field) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{simplex_boundary, simplex_skeleton};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn spheres_and_points() {
        let circle = reduced_homology(&simplex_boundary(2), f());
        assert_eq!(circle.dense(), vec![0, 0, 1]);
        let sphere = reduced_homology(&simplex_boundary(3), f());
        assert_eq!(sphere.dense(), vec![0, 0, 0, 1]);
        let point = reduced_homology(&SimplicialComplex::from_facets(&[vec!["a"]]).unwrap(), f());
        assert_eq!(point.dense(), vec![0, 0]);
        let void = reduced_homology(&SimplicialComplex::void(), f());
        assert_eq!(void.dense(), vec![1]);
    }

    #[test]
    fn euler_poincare_on_skeleta() {
        for (n, d) in [(5, 1), (5, 2), (6, 2), (6, 3)] {
            let c = simplex_skeleton(n, d);
            assert_eq!(reduced_homology(&c, f()).alternating_sum(), c.chi_tilde(), "skeleton {n},{d}");
        }
    }

    #[test]
    fn relative_pairs() {
        let c = simplex_boundary(2);
        assert!(relative_homology(&c, &c, f()).unwrap().betti.values().all(|&b| b == 0));
        let edge = SimplicialComplex::from_facets(&[vec!["a", "b"]]).unwrap();
        let ends = SimplicialComplex::from_facets(&[vec!["a"], vec!["b"]]).unwrap();
        let rel = relative_homology(&edge, &ends, f()).unwrap();
        assert_eq!(rel.betti(1), 1);
        assert_eq!(rel.betti(0), 0);
        let stranger = SimplicialComplex::from_facets(&[vec!["z"]]).unwrap();
        assert_eq!(relative_homology(&edge, &stranger, f()), Err(HomologyError::NotASubcomplex));
    }

    #[test]
    fn star_link_excision() {
        // H_i(Δ, cost v) ≅ H_i(star v, link v) ≅ H̃_{i-1}(link v).
        let oct = crate::generators::octahedron_boundary();
        for v in oct.vertices() {
            let cost = relative_homology(&oct, &oct.contrastar(&[v.as_ref()]).unwrap(), f()).unwrap();
            let star = oct.closed_star(v).unwrap();
            let link = oct.link(&[v.as_ref()]).unwrap();
            let pair = relative_homology(&star, &link, f()).unwrap();
            let lk = reduced_homology(&link, f());
            for i in 0..=2 {
                assert_eq!(cost.betti(i), pair.betti(i));
                assert_eq!(cost.betti(i), lk.betti(i - 1));
            }
        }
    }
}
