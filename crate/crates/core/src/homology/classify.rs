//! Cohen-Macaulay, Buchsbaum, doubly Cohen-Macaulay, Gorenstein* and
//! Buchsbaum* tests by link homology.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::chain::ChainComplex;
use super::field::PrimeField;
use super::maps::induced_map_from;
use crate::complex::{is_subset, Face, SimplicialComplex};

/// Why a classification fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NotPure {
        facet: Vec<String>,
    },
    /// `H̃_degree(link(face)) ≠ 0` below the link dimension.
    LinkHomology {
        face: Vec<String>,
        degree: isize,
        betti: usize,
    },
    /// Top homology of the link is not one-dimensional.
    TopLinkHomology {
        face: Vec<String>,
        degree: isize,
        betti: usize,
    },
    /// `H_degree(Δ, cost(face)) ≠ 0` below the top dimension.
    RelativeHomology {
        face: Vec<String>,
        degree: isize,
        betti: usize,
    },
    /// The link of `face` is not Cohen-Macaulay.
    LinkNotCohenMacaulay {
        face: Vec<String>,
        cause: Box<Witness>,
    },
    VertexDeletion {
        vertex: String,
        dimension: isize,
        cause: Option<Box<Witness>>,
    },
    NotSurjective {
        face: Vec<String>,
        rank: usize,
        codomain_dim: usize,
    },
    Requires {
        property: String,
    },
    /// The poset with extrema attached is not graded.
    NotGraded,
    /// `H̃_degree(Δ(x, y)) ≠ 0` below `ρ(x, y) - 2`.
    IntervalHomology {
        x: String,
        y: String,
        degree: isize,
        betti: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_failure(w: Option<Witness>) -> Self {
        Verdict { holds: w.is_none(), witness: w }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cohen_macaulay: Verdict,
    pub buchsbaum: Verdict,
    pub doubly_cohen_macaulay: Verdict,
    pub gorenstein_star: Verdict,
    pub buchsbaum_star: Verdict,
}

/// Faces of `link(σ)` in the vertex numbering of `complex`.
fn link_faces(complex: &SimplicialComplex, sigma: &[u32]) -> Vec<Face> {
    let mut seen: HashSet<Face> = HashSet::new();
    for f in complex.facets().iter().filter(|f| is_subset(sigma, f)) {
        let rest: Vec<u32> = f.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect();
        for mask in 0u64..1 << rest.len() {
            let t: Face = rest.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            seen.insert(t);
        }
    }
    seen.into_iter().collect()
}

/// Faces containing `sigma`.
fn star_faces(complex: &SimplicialComplex, sigma: &[u32]) -> Vec<Face> {
    link_faces(complex, sigma)
        .into_iter()
        .map(|mut t| {
            t.extend_from_slice(sigma);
            t.sort_unstable();
            t
        })
        .collect()
}

fn link_dim(complex: &SimplicialComplex, sigma: &[u32]) -> isize {
    complex
        .facets()
        .iter()
        .filter(|f| is_subset(sigma, f))
        .map(|f| f.len() as isize - sigma.len() as isize - 1)
        .max()
        .unwrap_or(-2)
}

/// Reduced Betti numbers of `link(σ)`, dense from degree `-1`.
fn link_betti(complex: &SimplicialComplex, sigma: &[u32], field: PrimeField) -> Vec<usize> {
    let cc = ChainComplex::from_cells(link_faces(complex, sigma));
    let betti = cc.betti(field);
    (-1..=cc.top_dim()).map(|k| betti.get(&k).copied().unwrap_or(0)).collect()
}

/// First face whose link has homology below its dimension.
fn link_condition_failure(complex: &SimplicialComplex, field: PrimeField, include_empty: bool) -> Option<Witness> {
    for face in complex.faces().iter() {
        if face.is_empty() && !include_empty {
            continue;
        }
        let ld = link_dim(complex, face);
        // Links of dimension ≤ 0 are nonempty, so nothing to check.
        if ld <= 0 {
            continue;
        }
        let betti = link_betti(complex, face, field);
        for (k, &b) in betti.iter().enumerate() {
            let degree = k as isize - 1;
            if degree < ld && b != 0 {
                return Some(Witness::LinkHomology { face: complex.labels_of(face), degree, betti: b });
            }
        }
    }
    None
}

fn cm_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    link_condition_failure(complex, field, true)
}

fn purity_failure(complex: &SimplicialComplex) -> Option<Witness> {
    let d = complex.dim();
    complex
        .facets()
        .iter()
        .find(|f| f.len() as isize - 1 != d)
        .map(|f| Witness::NotPure { facet: complex.labels_of(f) })
}

fn buchsbaum_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    purity_failure(complex).or_else(|| link_condition_failure(complex, field, false))
}

fn doubly_cm_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    if cm_failure(complex, field).is_some() {
        return Some(Witness::Requires { property: "cohen_macaulay".into() });
    }
    let d = complex.dim();
    // The first failing vertex in label order, so witnesses stay deterministic.
    (0..complex.vertices().len() as u32).into_par_iter().find_map_first(|v| {
        let rest = complex.delete_vertices(&[v]);
        let vertex = complex.vertices()[v as usize].to_string();
        if rest.dim() != d {
            return Some(Witness::VertexDeletion { vertex, dimension: rest.dim(), cause: None });
        }
        cm_failure(&rest, field).map(|w| Witness::VertexDeletion { vertex, dimension: d, cause: Some(Box::new(w)) })
    })
}

fn gorenstein_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    if cm_failure(complex, field).is_some() {
        return Some(Witness::Requires { property: "cohen_macaulay".into() });
    }
    for face in complex.faces().iter() {
        let ld = link_dim(complex, face);
        let betti = link_betti(complex, face, field);
        let top = betti.get((ld + 1) as usize).copied().unwrap_or(0);
        if top != 1 {
            return Some(Witness::TopLinkHomology { face: complex.labels_of(face), degree: ld, betti: top });
        }
    }
    None
}

/// Nonempty faces `σ` where `H̃_{d-1}(Δ) → H_{d-1}(Δ, cost σ)` is not onto.
fn surjectivity_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    let d = complex.dim();
    let whole = ChainComplex::of_complex(complex);
    let basis = whole.homology_basis(field, d);
    for face in complex.faces().iter().filter(|f| !f.is_empty()) {
        // The relative complex of (Δ, cost σ) is spanned by the faces ⊇ σ.
        let star = ChainComplex::from_cells(star_faces(complex, face));
        let map = induced_map_from(field, &whole, &basis, &star, d, |f| Some((f.clone(), false)));
        if !map.surjective {
            return Some(Witness::NotSurjective {
                face: complex.labels_of(face),
                rank: map.rank,
                codomain_dim: map.codomain_dim,
            });
        }
    }
    None
}

fn buchsbaum_star_failure(complex: &SimplicialComplex, field: PrimeField) -> Option<Witness> {
    if buchsbaum_failure(complex, field).is_some() {
        return Some(Witness::Requires { property: "buchsbaum".into() });
    }
    surjectivity_failure(complex, field)
}

pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: PrimeField) -> Verdict {
    Verdict::from_failure(cm_failure(complex, field))
}

pub fn is_buchsbaum(complex: &SimplicialComplex, field: PrimeField) -> Verdict {
    Verdict::from_failure(buchsbaum_failure(complex, field))
}

pub fn is_doubly_cohen_macaulay(complex: &SimplicialComplex, field: PrimeField) -> Verdict {
    Verdict::from_failure(doubly_cm_failure(complex, field))
}

pub fn is_gorenstein_star(complex: &SimplicialComplex, field: PrimeField) -> Verdict {
    Verdict::from_failure(gorenstein_failure(complex, field))
}

pub fn is_buchsbaum_star(complex: &SimplicialComplex, field: PrimeField) -> Verdict {
    Verdict::from_failure(buchsbaum_star_failure(complex, field))
}

pub fn classify(complex: &SimplicialComplex, field: PrimeField) -> Classification {
    Classification {
        cohen_macaulay: is_cohen_macaulay(complex, field),
        buchsbaum: is_buchsbaum(complex, field),
        doubly_cohen_macaulay: is_doubly_cohen_macaulay(complex, field),
        gorenstein_star: is_gorenstein_star(complex, field),
        buchsbaum_star: is_buchsbaum_star(complex, field),
    }
}

/// The three equivalent descriptions of the Buchsbaum property, each
/// evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuchsbaumCriteria {
    /// Pure, with vanishing link homology below the link dimension for
    /// nonempty faces.
    pub definition: Verdict,
    /// Pure, with every link of a nonempty face Cohen-Macaulay.
    pub links_cohen_macaulay: Verdict,
    /// `H_i(Δ, cost σ) = 0` for all nonempty `σ` and `i < dim Δ`.
    pub relative_vanishing: Verdict,
}

impl BuchsbaumCriteria {
    pub fn agree(&self) -> bool {
        self.definition.holds == self.links_cohen_macaulay.holds
            && self.definition.holds == self.relative_vanishing.holds
    }
}

pub fn buchsbaum_criteria(complex: &SimplicialComplex, field: PrimeField) -> BuchsbaumCriteria {
    let links = purity_failure(complex).or_else(|| {
        complex.faces().iter().filter(|f| !f.is_empty()).find_map(|face| {
            let link = complex.link_of(face).expect("face of the complex");
            cm_failure(&link, field)
                .map(|w| Witness::LinkNotCohenMacaulay { face: complex.labels_of(face), cause: Box::new(w) })
        })
    });
    let d = complex.dim();
    let relative = complex.faces().iter().filter(|f| !f.is_empty()).find_map(|face| {
        // C(Δ, cost σ) is spanned by the faces containing σ.
        let betti = ChainComplex::from_cells(star_faces(complex, face)).betti(field);
        betti.iter().find(|&(&k, &b)| k < d && b != 0).map(|(&k, &b)| Witness::RelativeHomology {
            face: complex.labels_of(face),
            degree: k,
            betti: b,
        })
    });
    BuchsbaumCriteria {
        definition: is_buchsbaum(complex, field),
        links_cohen_macaulay: Verdict::from_failure(links),
        relative_vanishing: Verdict::from_failure(relative),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{octahedron_boundary, projective_plane6, simplex_boundary, torus7};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn c(facets: &[&[&str]]) -> SimplicialComplex {
        let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_facets(&v).unwrap()
    }

    #[test]
    fn simplex_boundaries_are_gorenstein() {
        for k in 1..=4 {
            let cl = classify(&simplex_boundary(k), f());
            assert!(cl.cohen_macaulay.holds && cl.doubly_cohen_macaulay.holds, "k={k}");
            assert!(cl.gorenstein_star.holds && cl.buchsbaum_star.holds, "k={k}");
        }
    }

    #[test]
    fn path_is_cm_but_not_doubly() {
        let path = c(&[&["a", "b"], &["b", "c"]]);
        let cl = classify(&path, f());
        assert!(cl.cohen_macaulay.holds);
        assert!(!cl.doubly_cohen_macaulay.holds);
        assert_eq!(
            cl.doubly_cohen_macaulay.witness,
            Some(Witness::VertexDeletion { vertex: "b".into(), dimension: 0, cause: None })
        );
        assert!(!cl.buchsbaum_star.holds);
        assert!(!cl.gorenstein_star.holds);
    }

    #[test]
    fn disconnected_complex_fails_at_empty_face() {
        let d = c(&[&["a", "b"], &["b", "c"], &["x", "y"]]);
        let v = is_cohen_macaulay(&d, f());
        assert_eq!(v.witness, Some(Witness::LinkHomology { face: vec![], degree: 0, betti: 1 }));
        // Every vertex link is a point set of dimension 0, so it is Buchsbaum.
        assert!(is_buchsbaum(&d, f()).holds);
    }

    #[test]
    fn torus_is_buchsbaum_not_cm() {
        let t = torus7();
        let cl = classify(&t, f());
        assert!(!cl.cohen_macaulay.holds);
        assert!(cl.buchsbaum.holds);
        assert!(buchsbaum_criteria(&t, f()).agree());
    }

    #[test]
    fn projective_plane_depends_on_field() {
        let rp2 = projective_plane6();
        assert!(is_cohen_macaulay(&rp2, f()).holds);
        assert!(!is_cohen_macaulay(&rp2, PrimeField::new(2).unwrap()).holds);
    }

    #[test]
    fn octahedron_and_aw_equivalence() {
        let o = octahedron_boundary();
        let cl = classify(&o, f());
        assert!(cl.gorenstein_star.holds);
        assert_eq!(cl.doubly_cohen_macaulay.holds, cl.buchsbaum_star.holds);
    }

    #[test]
    fn nonpure_is_not_buchsbaum() {
        let d = c(&[&["a", "b", "c"], &["c", "d"]]);
        let crit = buchsbaum_criteria(&d, f());
        assert!(!crit.definition.holds);
        assert!(crit.agree());
    }
}
