//! Abstract simplicial complexes stored by their facets.

mod order;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

pub use order::{order_complex, order_complex_of, order_complex_open_interval};

/// A face as sorted vertex indices of its complex.
pub type Face = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex has no faces")]
    EmptyComplex,
    #[error("face {0:?} is not in the complex")]
    FaceNotInComplex(Vec<String>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is listed but lies in no facet")]
    UnusedVertex(String),
    #[error("vertex `{0}` repeated inside a facet")]
    RepeatedVertex(String),
    #[error("facet {0:?} is contained in another facet")]
    NonMaximalFacet(Vec<String>),
    #[error("contrastar of the empty face is the empty complex")]
    EmptyFaceContrastar,
}

/// A simplicial complex. Vertices are sorted by label and faces are sorted
/// index vectors, so the lexicographic order of labels fixes orientations.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Arc<[Arc<str>]>,
    facets: Vec<Face>,
    faces: OnceLock<FaceTable>,
}

/// All faces grouped by dimension; `by_dim[0]` holds the empty face.
#[derive(Debug, Clone)]
pub struct FaceTable {
    by_dim: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
}

impl FaceTable {
    /// Faces of dimension `dim` (`-1` for the empty face), sorted.
    pub fn of_dim(&self, dim: isize) -> &[Face] {
        usize::try_from(dim + 1).ok().and_then(|i| self.by_dim.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, face: &[u32]) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.position(face).is_some()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.by_dim.iter().flatten()
    }

    /// Top dimension present.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 2
    }

    fn from_facets(facets: &[Face]) -> FaceTable {
        let top = facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut sets: Vec<HashSet<Face>> = vec![HashSet::new(); top + 1];
        for f in facets {
            sets[f.len()].insert(f.clone());
        }
        for size in (1..=top).rev() {
            let current: Vec<Face> = sets[size].iter().cloned().collect();
            for f in current {
                for skip in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(skip);
                    sets[size - 1].insert(g);
                }
            }
        }
        let by_dim: Vec<Vec<Face>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Face> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index = by_dim.iter().map(|v| v.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect()).collect();
        FaceTable { by_dim, index }
    }
}

/// Face counts `f_{-1}, f_0, …, f_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_{i-1}` for `i = 0..=d`.
    pub fn get(&self, i_minus_one: isize) -> u64 {
        usize::try_from(i_minus_one + 1).ok().and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    /// `Σ_i (-1)^{i-1} f_{i-1}`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 }).sum()
    }
}

/// Keeps only the inclusion-maximal sets, sorted and deduplicated.
pub(crate) fn maximal_only(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_unstable();
    sets.dedup();
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Face> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.len() > s.len() && is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Subset test for sorted slices.
pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

impl SimplicialComplex {
    /// Builds a complex from facets given by vertex labels. Non-maximal
    /// facets are rejected.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, ComplexError> {
        Self::from_labeled(facets, true)
    }

    /// Builds the complex generated by arbitrary faces (closure under
    /// subsets; non-maximal generators are absorbed).
    pub fn from_generators<S: AsRef<str>>(faces: &[Vec<S>]) -> Result<Self, ComplexError> {
        Self::from_labeled(faces, false)
    }

    /// Like [`from_facets`](Self::from_facets) with an explicit vertex list;
    /// every listed vertex must lie in a facet and vice versa.
    pub fn with_vertices<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        facets: &[Vec<T>],
    ) -> Result<Self, ComplexError> {
        let c = Self::from_facets(facets)?;
        let listed: HashSet<&str> = vertices.iter().map(AsRef::as_ref).collect();
        for v in c.vertices.iter() {
            if !listed.contains(v.as_ref()) {
                return Err(ComplexError::UnknownVertex(v.to_string()));
            }
        }
        for v in vertices {
            if c.vertex_index(v.as_ref()).is_none() {
                return Err(ComplexError::UnusedVertex(v.as_ref().to_owned()));
            }
        }
        Ok(c)
    }

    fn from_labeled<S: AsRef<str>>(facets: &[Vec<S>], strict: bool) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut names: Vec<&str> = facets.iter().flatten().map(AsRef::as_ref).collect();
        names.sort_unstable();
        names.dedup();
        let vertices: Arc<[Arc<str>]> = names.iter().map(|&s| Arc::from(s)).collect();
        let pos: HashMap<&str, u32> = names.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let mut idx_facets = Vec::with_capacity(facets.len());
        for f in facets {
            let mut face: Face = f.iter().map(|v| pos[v.as_ref()]).collect();
            face.sort_unstable();
            if let Some(w) = face.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(vertices[w[0] as usize].to_string()));
            }
            idx_facets.push(face);
        }
        let maximal = maximal_only(idx_facets.clone());
        if strict {
            let mut given = idx_facets;
            given.sort_unstable();
            given.dedup();
            if given.len() != maximal.len() {
                let bad = given.into_iter().find(|g| !maximal.contains(g)).unwrap();
                let labels = bad.iter().map(|&v| vertices[v as usize].to_string()).collect();
                return Err(ComplexError::NonMaximalFacet(labels));
            }
        }
        Ok(Self::from_parts(vertices, maximal))
    }

    /// Internal constructor from maximal index facets; vertices that lie in
    /// no facet are dropped and indices compacted.
    pub(crate) fn from_parts(vertices: Arc<[Arc<str>]>, facets: Vec<Face>) -> Self {
        let mut used = vec![false; vertices.len()];
        for f in &facets {
            for &v in f {
                used[v as usize] = true;
            }
        }
        if used.iter().all(|&u| u) {
            return SimplicialComplex { vertices, facets, faces: OnceLock::new() };
        }
        let mut remap = vec![u32::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            if used[i] {
                remap[i] = kept.len() as u32;
                kept.push(v.clone());
            }
        }
        let facets = facets.into_iter().map(|f| f.into_iter().map(|v| remap[v as usize]).collect()).collect();
        SimplicialComplex { vertices: kept.into(), facets, faces: OnceLock::new() }
    }

    /// The complex `{∅}`.
    pub fn void() -> Self {
        SimplicialComplex { vertices: Arc::from(Vec::new()), facets: vec![Vec::new()], faces: OnceLock::new() }
    }

    pub fn vertices(&self) -> &[Arc<str>] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<u32> {
        self.vertices.binary_search_by(|v| v.as_ref().cmp(label)).ok().map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn labels_of(&self, face: &[u32]) -> Vec<String> {
        face.iter().map(|&v| self.vertices[v as usize].to_string()).collect()
    }

    pub fn facets_labeled(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    /// Translates a labeled face into sorted indices.
    pub fn face_from_labels<S: AsRef<str>>(&self, face: &[S]) -> Result<Face, ComplexError> {
        let mut out = Vec::with_capacity(face.len());
        for v in face {
            out.push(self.vertex_index(v.as_ref()).ok_or_else(|| ComplexError::UnknownVertex(v.as_ref().to_owned()))?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Dimension; `-1` for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    pub fn is_void(&self) -> bool {
        self.dim() < 0
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    /// Materialized faces, computed once.
    pub fn faces(&self) -> &FaceTable {
        self.faces.get_or_init(|| FaceTable::from_facets(&self.facets))
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    pub fn f_vector(&self) -> FVector {
        let t = self.faces();
        FVector(t.by_dim.iter().map(|v| v.len() as u64).collect())
    }

    /// Reduced Euler characteristic from the f-vector.
    pub fn chi_tilde(&self) -> i64 {
        self.f_vector().reduced_euler_characteristic()
    }

    fn checked_face(&self, face: &[u32]) -> Result<(), ComplexError> {
        if self.contains_face(face) {
            Ok(())
        } else {
            Err(ComplexError::FaceNotInComplex(self.labels_of(face)))
        }
    }

    /// `lk(σ) = {τ ∖ σ : σ ⊆ τ}`.
    pub fn link_of(&self, sigma: &[u32]) -> Result<SimplicialComplex, ComplexError> {
        self.checked_face(sigma)?;
        let gens: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| is_subset(sigma, f))
            .map(|f| f.iter().copied().filter(|v| !sigma.contains(v)).collect())
            .collect();
        Ok(Self::from_parts(self.vertices.clone(), maximal_only(gens)))
    }

    /// Faces not containing `σ`.
    pub fn contrastar_of(&self, sigma: &[u32]) -> Result<SimplicialComplex, ComplexError> {
        self.checked_face(sigma)?;
        if sigma.is_empty() {
            return Err(ComplexError::EmptyFaceContrastar);
        }
        let mut gens = Vec::new();
        for f in &self.facets {
            if is_subset(sigma, f) {
                for v in sigma {
                    gens.push(f.iter().copied().filter(|w| w != v).collect());
                }
            } else {
                gens.push(f.clone());
            }
        }
        Ok(Self::from_parts(self.vertices.clone(), maximal_only(gens)))
    }

    /// Faces `σ` with `σ ∪ {v}` a face.
    pub fn closed_star_of(&self, v: u32) -> Result<SimplicialComplex, ComplexError> {
        self.checked_face(&[v])?;
        let gens = self.facets.iter().filter(|f| f.contains(&v)).cloned().collect();
        Ok(Self::from_parts(self.vertices.clone(), gens))
    }

    /// Faces disjoint from `U`.
    pub fn delete_vertices(&self, remove: &[u32]) -> SimplicialComplex {
        let gens = self.facets.iter().map(|f| f.iter().copied().filter(|v| !remove.contains(v)).collect()).collect();
        Self::from_parts(self.vertices.clone(), maximal_only(gens))
    }

    pub fn link<S: AsRef<str>>(&self, sigma: &[S]) -> Result<SimplicialComplex, ComplexError> {
        self.link_of(&self.face_from_labels(sigma)?)
    }

    pub fn contrastar<S: AsRef<str>>(&self, sigma: &[S]) -> Result<SimplicialComplex, ComplexError> {
        self.contrastar_of(&self.face_from_labels(sigma)?)
    }

    pub fn closed_star(&self, v: &str) -> Result<SimplicialComplex, ComplexError> {
        let i = self.vertex_index(v).ok_or_else(|| ComplexError::UnknownVertex(v.to_owned()))?;
        self.closed_star_of(i)
    }

    pub fn delete_vertex_set<S: AsRef<str>>(&self, remove: &[S]) -> Result<SimplicialComplex, ComplexError> {
        Ok(self.delete_vertices(&self.face_from_labels(remove)?))
    }

    /// Whether every face of `self` is a face of `other` (compared by label).
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| {
            let labels = self.labels_of(f);
            other.face_from_labels(&labels).is_ok_and(|g| other.contains_face(&g))
        })
    }

    /// Faces of `self` expressed in the vertex indices of `ambient`.
    pub(crate) fn faces_in(&self, ambient: &SimplicialComplex) -> Result<Vec<Face>, ComplexError> {
        let map: Vec<u32> = self
            .vertices
            .iter()
            .map(|v| ambient.vertex_index(v).ok_or_else(|| ComplexError::UnknownVertex(v.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(self
            .faces()
            .iter()
            .map(|f| {
                let mut g: Face = f.iter().map(|&v| map[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect())
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialComplex").field("facets", &self.facets_labeled()).finish()
    }
}
