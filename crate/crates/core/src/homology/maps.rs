//! Maps on homology induced by chain maps.

use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::{dense_rank, ChainComplex, HomologyBasis, SparseVec};
use super::field::PrimeField;
use super::HomologyError;
use crate::complex::{Face, SimplicialComplex};

/// A linear map between homology groups, written in the chosen bases.
///
/// `matrix[i][j]` is the `i`-th coordinate of the image of the `j`-th
/// domain basis class, printed as the symmetric representative mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedMapReport {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub surjective: bool,
    pub matrix: Vec<Vec<i64>>,
}

/// The map `H_{src_deg}(src) → H_{dst_deg}(dst)` induced by a chain map
/// given cell by cell. `chain_map` returns the image face and whether the
/// sign flips; image faces that are not cells of `dst` count as zero.
pub fn induced_map(
    field: PrimeField,
    src: &ChainComplex,
    src_deg: isize,
    dst: &ChainComplex,
    dst_deg: isize,
    chain_map: impl Fn(&Face) -> Option<(Face, bool)>,
) -> InducedMapReport {
    let from = src.homology_basis(field, src_deg);
    induced_map_from(field, src, &from, dst, dst_deg, chain_map)
}

/// As [`induced_map`] with a precomputed basis of the source.
pub(crate) fn induced_map_from(
    field: PrimeField,
    src: &ChainComplex,
    from: &HomologyBasis,
    dst: &ChainComplex,
    dst_deg: isize,
    chain_map: impl Fn(&Face) -> Option<(Face, bool)>,
) -> InducedMapReport {
    let src_deg = from.dim();
    let to = dst.homology_basis(field, dst_deg);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(from.len());
    for rep in from.representatives() {
        let mut image: BTreeMap<u32, u32> = BTreeMap::new();
        for &(cell, coef) in rep {
            let face = &src.cells(src_deg)[cell as usize];
            let Some((target, flip)) = chain_map(face) else { continue };
            let Some(row) = dst.position(&target) else { continue };
            let c = if flip { field.neg(coef) } else { coef };
            let e = image.entry(row).or_insert(0);
            *e = field.add(*e, c);
        }
        let image: SparseVec = image.into_iter().filter(|&(_, v)| v != 0).collect();
        let coords = to.coordinates(&image).expect("a chain map sends cycles to cycles");
        columns.push(coords);
    }
    let matrix: Vec<Vec<u32>> = (0..to.len()).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let rank = dense_rank(field, &matrix);
    InducedMapReport {
        domain_dim: from.len(),
        codomain_dim: to.len(),
        rank,
        surjective: rank == to.len(),
        matrix: matrix.iter().map(|row| row.iter().map(|&v| field.to_signed(v)).collect()).collect(),
    }
}

/// `H̃_dim(Δ) → H_dim(Δ, Γ)` induced by the quotient of chain complexes.
pub fn induced_inclusion_map(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    dim: isize,
    field: PrimeField,
) -> Result<InducedMapReport, HomologyError> {
    let whole = ChainComplex::of_complex(delta);
    let pair = ChainComplex::relative(delta, gamma)?;
    Ok(induced_map(field, &whole, dim, &pair, dim, |f| Some((f.clone(), false))))
}

/// Chain complex of `link_Γ(v)` in the vertex numbering of `Γ`.
pub(crate) fn link_cells(gamma: &SimplicialComplex, v: u32) -> ChainComplex {
    ChainComplex::from_cells(gamma.faces().iter().filter(|f| f.binary_search(&v).is_ok()).map(|f| {
        let mut g = f.clone();
        g.retain(|&u| u != v);
        g
    }))
}

/// `σ ↦ (-1)^i σ ∖ {v}` when `v` sits in position `i` of `σ`, else zero.
pub(crate) fn delete_vertex_chain_map(v: u32) -> impl Fn(&Face) -> Option<(Face, bool)> {
    move |f: &Face| {
        let pos = f.binary_search(&v).ok()?;
        let mut g = f.clone();
        g.remove(pos);
        Some((g, pos % 2 == 1))
    }
}

/// `ρ_v: H̃_k(Γ) → H̃_{k-1}(link_Γ(v))` with `k = dim Γ`.
pub fn rho_vertex_map(
    gamma: &SimplicialComplex,
    v: &str,
    field: PrimeField,
) -> Result<InducedMapReport, HomologyError> {
    let vi = gamma.vertex_index(v).ok_or_else(|| HomologyError::UnknownVertex(v.to_owned()))?;
    let k = gamma.dim();
    let whole = ChainComplex::of_complex(gamma);
    let link = link_cells(gamma, vi);
    Ok(induced_map(field, &whole, k, &link, k - 1, delete_vertex_chain_map(vi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cubical_complex_poset, simplex_boundary, CubicalKind};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn identity_pair_gives_zero_map() {
        let c = simplex_boundary(2);
        let m = induced_inclusion_map(&c, &c, 1, f()).unwrap();
        assert_eq!((m.domain_dim, m.codomain_dim, m.rank), (1, 0, 0));
        assert!(m.surjective);
    }

    #[test]
    fn square_cycle_onto_contrastar_pairs() {
        let square =
            SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"], vec!["a", "d"]]).unwrap();
        for v in ["a", "b", "c", "d"] {
            let m = induced_inclusion_map(&square, &square.contrastar(&[v]).unwrap(), 1, f()).unwrap();
            assert_eq!((m.domain_dim, m.codomain_dim, m.rank), (1, 1, 1));
            assert!(m.surjective);
        }
    }

    #[test]
    fn disjoint_edges_have_no_top_homology() {
        let c = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        let g = SimplicialComplex::from_facets(&[vec!["a"], vec!["d"]]).unwrap();
        let m = induced_inclusion_map(&c, &g, 1, f()).unwrap();
        assert_eq!(m.rank, 0);
        assert_eq!(m.domain_dim, 0);
    }

    #[test]
    fn rho_on_triangle_boundary() {
        let c = simplex_boundary(2);
        for v in ["1", "2", "3"] {
            let m = rho_vertex_map(&c, v, f()).unwrap();
            assert_eq!((m.domain_dim, m.codomain_dim, m.rank), (1, 1, 1));
        }
        assert!(matches!(rho_vertex_map(&c, "9", f()), Err(HomologyError::UnknownVertex(_))));
    }

    #[test]
    fn rho_at_isolated_vertex_is_zero() {
        let c = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"], vec!["z"]]).unwrap();
        let m = rho_vertex_map(&c, "z", f()).unwrap();
        assert_eq!(m.rank, 0);
        assert_eq!(m.domain_dim, 1);
    }

    #[test]
    fn rho_matches_contrastar_map() {
        // ρ_v and ρ_* have the same rank (the excision isomorphisms).
        let poset = cubical_complex_poset(CubicalKind::CubeBoundary { n: 3 }).unwrap();
        let q_bar = poset.remove_maximal().unwrap().remove_min().unwrap();
        let gamma = crate::complex::order_complex(&q_bar);
        for v in gamma.vertices().iter().take(5) {
            let rho = rho_vertex_map(&gamma, v, f()).unwrap();
            let star =
                induced_inclusion_map(&gamma, &gamma.contrastar(&[v.as_ref()]).unwrap(), gamma.dim(), f()).unwrap();
            assert_eq!(rho.rank, star.rank);
            assert_eq!(rho.codomain_dim, star.codomain_dim);
        }
    }
}
