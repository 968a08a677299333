//! Deterministic constructors for the instance families used by the audits.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unsupported kind `{0}`")]
    UnsupportedKind(String),
    #[error("bad parameters for `{family}`: {reason}")]
    BadParameters { family: String, reason: String },
}

pub const MAX_CUBE_DIM: usize = 6;
pub const MAX_GRID_SIDE: usize = 4;
pub const MAX_RANDOM_VERTICES: usize = 12;

/// Label of the empty face in every generated face poset.
pub const EMPTY_FACE: &str = "{}";

fn set_label(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

/// `B_n` on the subsets of `{1..n}`.
pub fn boolean_lattice(n: usize) -> Result<FinitePoset, GeneratorError> {
    if n > MAX_CUBE_DIM {
        return Err(GeneratorError::SizeLimit(format!("boolean lattice rank {n} > {MAX_CUBE_DIM}")));
    }
    Ok(boolean_lattice_unchecked(n))
}

pub(crate) fn boolean_lattice_unchecked(n: usize) -> FinitePoset {
    let total = 1usize << n;
    let label = |s: usize| {
        let items: Vec<String> = (0..n).filter(|b| s >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
        set_label(&items)
    };
    let labels: Vec<String> = (0..total).map(label).collect();
    let mut pairs = Vec::new();
    for s in 0..total {
        for b in 0..n {
            if s >> b & 1 == 0 {
                pairs.push((s, s | 1 << b));
            }
        }
    }
    FinitePoset::from_trusted(labels, pairs)
}

/// A cell of a cubical box complex: one `(lo, hi)` pair per coordinate with
/// `hi - lo ∈ {0, 1}`.
type BoxCell = Vec<(u32, u32)>;

fn box_label(cell: &BoxCell) -> String {
    let parts: Vec<String> =
        cell.iter().map(|&(lo, hi)| if lo == hi { lo.to_string() } else { format!("{lo}:{hi}") }).collect();
    format!("({})", parts.join(","))
}

/// Face poset (with the empty face as minimum) of a collection of box cells
/// closed under taking faces.
fn box_complex_poset(cells: &BTreeSet<BoxCell>) -> FinitePoset {
    let mut labels = vec![EMPTY_FACE.to_owned()];
    let mut slot = HashMap::new();
    for c in cells {
        slot.insert(c.clone(), labels.len());
        labels.push(box_label(c));
    }
    let mut pairs = Vec::new();
    for c in cells {
        let me = slot[c];
        let mut is_vertex = true;
        for (i, &(lo, hi)) in c.iter().enumerate() {
            if lo != hi {
                is_vertex = false;
                for end in [lo, hi] {
                    let mut child = c.clone();
                    child[i] = (end, end);
                    pairs.push((slot[&child], me));
                }
            }
        }
        if is_vertex {
            pairs.push((0, me));
        }
    }
    FinitePoset::from_trusted(labels, pairs)
}

fn cube_cells(n: usize) -> BTreeSet<BoxCell> {
    let mut cells = BTreeSet::new();
    for code in 0..3usize.pow(n as u32) {
        let mut c = Vec::with_capacity(n);
        let mut rest = code;
        for _ in 0..n {
            c.push(match rest % 3 {
                0 => (0, 0),
                1 => (1, 1),
                _ => (0, 1),
            });
            rest /= 3;
        }
        cells.insert(c);
    }
    cells
}

/// Face lattice of the `n`-cube: empty face at the bottom, the cube itself
/// at the top, `3^n + 1` elements.
pub fn cube_face_lattice(n: usize) -> Result<FinitePoset, GeneratorError> {
    if n > MAX_CUBE_DIM {
        return Err(GeneratorError::SizeLimit(format!("cube dimension {n} > {MAX_CUBE_DIM}")));
    }
    Ok(cube_face_lattice_unchecked(n))
}

pub(crate) fn cube_face_lattice_unchecked(n: usize) -> FinitePoset {
    box_complex_poset(&cube_cells(n))
}

/// Cubical complexes with a face poset generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CubicalKind {
    /// Boundary of the `n`-cube.
    CubeBoundary { n: usize },
    /// Unit squares tiling an `a × b` rectangle.
    Grid { a: usize, b: usize },
    /// `n`-gon as a 1-dimensional cubical complex.
    Cycle { n: usize },
}

impl CubicalKind {
    pub fn parse(kind: &str, params: &[usize]) -> Result<Self, GeneratorError> {
        let bad = |reason: &str| GeneratorError::BadParameters { family: kind.to_owned(), reason: reason.to_owned() };
        match (kind, params) {
            ("cube-boundary", [n]) => Ok(CubicalKind::CubeBoundary { n: *n }),
            ("grid", [a, b]) => Ok(CubicalKind::Grid { a: *a, b: *b }),
            ("cycle", [n]) => Ok(CubicalKind::Cycle { n: *n }),
            ("cube-boundary" | "cycle", _) => Err(bad("expected one size parameter")),
            ("grid", _) => Err(bad("expected two side lengths")),
            _ => Err(GeneratorError::UnsupportedKind(kind.to_owned())),
        }
    }
}

/// Face poset of a cubical complex, with the empty face as minimum.
pub fn cubical_complex_poset(kind: CubicalKind) -> Result<FinitePoset, GeneratorError> {
    match kind {
        CubicalKind::CubeBoundary { n } => {
            if n == 0 || n > MAX_CUBE_DIM {
                return Err(GeneratorError::SizeLimit(format!("cube boundary needs 1 ≤ n ≤ {MAX_CUBE_DIM}")));
            }
            let mut cells = cube_cells(n);
            cells.remove(&vec![(0, 1); n]);
            Ok(box_complex_poset(&cells))
        }
        CubicalKind::Grid { a, b } => {
            if a == 0 || b == 0 || a > MAX_GRID_SIDE || b > MAX_GRID_SIDE {
                return Err(GeneratorError::SizeLimit(format!("grid sides must lie in 1..={MAX_GRID_SIDE}")));
            }
            let mut cells = BTreeSet::new();
            for i in 0..a as u32 {
                for j in 0..b as u32 {
                    for cx in [(i, i), (i + 1, i + 1), (i, i + 1)] {
                        for cy in [(j, j), (j + 1, j + 1), (j, j + 1)] {
                            cells.insert(vec![cx, cy]);
                        }
                    }
                }
            }
            Ok(box_complex_poset(&cells))
        }
        CubicalKind::Cycle { n } => {
            if n < 2 {
                return Err(GeneratorError::BadParameters { family: "cycle".into(), reason: "need n ≥ 2".into() });
            }
            if n > 64 {
                return Err(GeneratorError::SizeLimit(format!("cycle length {n} > 64")));
            }
            let mut labels = vec![EMPTY_FACE.to_owned()];
            labels.extend((0..n).map(|i| format!("v{i}")));
            labels.extend((0..n).map(|i| format!("e{i}")));
            let mut pairs = Vec::new();
            for i in 0..n {
                pairs.push((0, 1 + i));
                pairs.push((1 + i, 1 + n + i));
                pairs.push((1 + (i + 1) % n, 1 + n + i));
            }
            Ok(FinitePoset::from_trusted(labels, pairs))
        }
    }
}

/// Face poset of a simplicial complex ordered by inclusion, with `∅` as
/// minimum. Faces are labeled `{a,b,…}` by their vertex labels.
pub fn face_poset_of_complex(complex: &SimplicialComplex) -> FinitePoset {
    let faces: Vec<&Vec<u32>> = complex.faces().iter().collect();
    let mut labels: Vec<String> = faces.iter().map(|f| set_label(&complex.labels_of(f))).collect();
    let distinct: HashSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        // Vertex labels containing separators; fall back to JSON encoding.
        labels = faces.iter().map(|f| serde_json::to_string(&complex.labels_of(f)).unwrap()).collect();
    }
    let slot: HashMap<&Vec<u32>, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut pairs = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for skip in 0..f.len() {
            let mut g = (*f).clone();
            g.remove(skip);
            pairs.push((slot[&g], i));
        }
    }
    FinitePoset::from_trusted(labels, pairs)
}

/// Simplicial posets that are not face posets of simplicial complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GlueKind {
    /// Two `n`-simplices glued along their entire boundary.
    TwoFacetsSharedBoundary { n: usize },
}

pub fn simplicial_poset_glue(kind: GlueKind) -> Result<FinitePoset, GeneratorError> {
    match kind {
        GlueKind::TwoFacetsSharedBoundary { n } => {
            if n == 0 || n + 1 > MAX_CUBE_DIM {
                return Err(GeneratorError::SizeLimit(format!("simplex dimension must lie in 1..{MAX_CUBE_DIM}")));
            }
            let boundary = simplex_boundary(n);
            let base = face_poset_of_complex(&boundary);
            let full: Vec<String> = (1..=n + 1).map(|i| i.to_string()).collect();
            let top = set_label(&full);
            let mut labels = base.labels().to_vec();
            let mut pairs = base.covers();
            let facets = base.maximal_elements();
            for copy in ["a", "b"] {
                let id = labels.len();
                labels.push(format!("{top}#{copy}"));
                pairs.extend(facets.iter().map(|&f| (f, id)));
            }
            Ok(FinitePoset::from_trusted(labels, pairs))
        }
    }
}

/// xorshift64* with a splitmix64-scrambled seed.
///
/// State update `x ^= x >> 12; x ^= x << 25; x ^= x >> 27`, output
/// `x * 0x2545F4914F6CDD1D`. The seed is passed once through splitmix64
/// (`+0x9E3779B97F4A7C15`, multipliers `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB`) so seed 0 is valid.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64Star { state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn complex_from_index_sets(sets: &[Vec<usize>]) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = sets.iter().map(|s| s.iter().map(|&v| (v + 1).to_string()).collect()).collect();
    SimplicialComplex::from_generators(&facets).expect("nonempty generator list")
}

/// A pure `d`-dimensional complex whose facets are drawn from the
/// `(d+1)`-subsets of `{1..n}` (each kept on a fair coin flip, in
/// lexicographic order; the first subset is used if no flip succeeds).
pub fn random_pure_subcomplex(n: usize, d: usize, seed: u64) -> Result<SimplicialComplex, GeneratorError> {
    if n > MAX_RANDOM_VERTICES {
        return Err(GeneratorError::SizeLimit(format!("{n} vertices > {MAX_RANDOM_VERTICES}")));
    }
    if d + 1 > n {
        return Err(GeneratorError::BadParameters {
            family: "random-pure".into(),
            reason: format!("dimension {d} needs at least {} vertices", d + 1),
        });
    }
    let mut rng = XorShift64Star::new(seed);
    let all = k_subsets(n, d + 1);
    let mut chosen: Vec<Vec<usize>> = all.iter().filter(|_| rng.coin()).cloned().collect();
    if chosen.is_empty() {
        chosen.push(all[0].clone());
    }
    Ok(complex_from_index_sets(&chosen))
}

/// The `d`-skeleton of the simplex on `{1..n}`.
pub fn simplex_skeleton(n: usize, d: usize) -> SimplicialComplex {
    complex_from_index_sets(&k_subsets(n, d + 1))
}

/// Boundary of the `k`-simplex on vertices `{1..k+1}`.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    simplex_skeleton(k + 1, k - 1)
}

/// Boundary of the octahedron.
pub fn octahedron_boundary() -> SimplicialComplex {
    let mut sets = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                sets.push(vec![x, y, z]);
            }
        }
    }
    complex_from_index_sets(&sets)
}

/// Seven-vertex triangulation of the torus.
pub fn torus7() -> SimplicialComplex {
    let sets: Vec<Vec<usize>> =
        (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
    complex_from_index_sets(&sets)
}

/// Six-vertex triangulation of the real projective plane.
pub fn projective_plane6() -> SimplicialComplex {
    let sets: Vec<Vec<usize>> =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6]]
            .iter()
            .map(|t| t.iter().map(|&v| v - 1).collect())
            .collect();
    complex_from_index_sets(&sets)
}

/// A named instance of the built-in audit suite.
#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub name: String,
    pub family: String,
    pub poset: FinitePoset,
}

/// Parameters identifying one generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: String,
    pub params: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
}

/// A generated object: posets for poset families, complexes for
/// complex families.
#[derive(Debug, Clone)]
pub enum Generated {
    Poset(FinitePoset),
    Complex(SimplicialComplex),
}

pub const FAMILIES: &[&str] = &[
    "boolean",
    "cube",
    "cube-boundary",
    "grid",
    "cycle",
    "two-facets-shared-boundary",
    "simplex-boundary",
    "simplex-skeleton",
    "octahedron",
    "torus",
    "projective-plane",
    "random-pure",
];

impl FamilyParams {
    pub fn new(family: &str, params: &[usize], seed: u64) -> Self {
        FamilyParams { family: family.to_owned(), params: params.to_vec(), seed }
    }

    pub fn name(&self) -> String {
        let mut s = self.family.clone();
        for p in &self.params {
            s.push('-');
            s.push_str(&p.to_string());
        }
        if self.family == "random-pure" {
            s.push_str(&format!("-s{}", self.seed));
        }
        s
    }

    pub fn build(&self) -> Result<Generated, GeneratorError> {
        let bad = |reason: &str| GeneratorError::BadParameters { family: self.family.clone(), reason: reason.into() };
        let one = || match self.params.as_slice() {
            [n] => Ok(*n),
            _ => Err(bad("expected one parameter")),
        };
        let none = || if self.params.is_empty() { Ok(()) } else { Err(bad("takes no parameters")) };
        Ok(match self.family.as_str() {
            "boolean" => Generated::Poset(boolean_lattice(one()?)?),
            "cube" => Generated::Poset(cube_face_lattice(one()?)?),
            "cube-boundary" | "grid" | "cycle" => {
                Generated::Poset(cubical_complex_poset(CubicalKind::parse(&self.family, &self.params)?)?)
            }
            "two-facets-shared-boundary" => {
                Generated::Poset(simplicial_poset_glue(GlueKind::TwoFacetsSharedBoundary { n: one()? })?)
            }
            "simplex-boundary" => {
                let k = one()?;
                if k == 0 || k > MAX_CUBE_DIM {
                    return Err(GeneratorError::SizeLimit(format!("simplex dimension must lie in 1..={MAX_CUBE_DIM}")));
                }
                Generated::Complex(simplex_boundary(k))
            }
            "simplex-skeleton" => match self.params.as_slice() {
                [n, d] if *d < *n && *n <= MAX_RANDOM_VERTICES => Generated::Complex(simplex_skeleton(*n, *d)),
                _ => return Err(bad("expected n and d with d < n ≤ 12")),
            },
            "octahedron" => {
                none()?;
                Generated::Complex(octahedron_boundary())
            }
            "torus" => {
                none()?;
                Generated::Complex(torus7())
            }
            "projective-plane" => {
                none()?;
                Generated::Complex(projective_plane6())
            }
            "random-pure" => match self.params.as_slice() {
                [n, d] => Generated::Complex(random_pure_subcomplex(*n, *d, self.seed)?),
                _ => return Err(bad("expected n and d")),
            },
            other => return Err(GeneratorError::UnsupportedKind(other.to_owned())),
        })
    }

    /// The instance as a poset (complexes become face posets).
    pub fn build_poset(&self) -> Result<FinitePoset, GeneratorError> {
        Ok(match self.build()? {
            Generated::Poset(p) => p,
            Generated::Complex(c) => face_poset_of_complex(&c),
        })
    }
}

/// Family parameters of the built-in audit suite.
pub fn builtin_params() -> Vec<FamilyParams> {
    let mut list = Vec::new();
    for n in 0..=5 {
        list.push(FamilyParams::new("boolean", &[n], 0));
    }
    for n in 0..=4 {
        list.push(FamilyParams::new("cube", &[n], 0));
    }
    for n in 1..=4 {
        list.push(FamilyParams::new("cube-boundary", &[n], 0));
    }
    for n in 3..=6 {
        list.push(FamilyParams::new("cycle", &[n], 0));
    }
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        list.push(FamilyParams::new("grid", &[a, b], 0));
    }
    for k in 1..=4 {
        list.push(FamilyParams::new("simplex-boundary", &[k], 0));
    }
    for n in 1..=3 {
        list.push(FamilyParams::new("two-facets-shared-boundary", &[n], 0));
    }
    list.push(FamilyParams::new("simplex-skeleton", &[5, 1], 0));
    list.push(FamilyParams::new("simplex-skeleton", &[5, 2], 0));
    list.push(FamilyParams::new("octahedron", &[], 0));
    list.push(FamilyParams::new("torus", &[], 0));
    list.push(FamilyParams::new("projective-plane", &[], 0));
    for seed in 1..=3 {
        list.push(FamilyParams::new("random-pure", &[6, 2], seed));
    }
    list.push(FamilyParams::new("random-pure", &[5, 1], 7));
    list
}

/// The built-in suite, sorted by instance name.
pub fn builtin_suite() -> Vec<SuiteInstance> {
    let mut out: Vec<SuiteInstance> = builtin_params()
        .into_iter()
        .map(|s| SuiteInstance {
            name: s.name(),
            family: s.family.clone(),
            poset: s.build_poset().expect("built-in parameters are valid"),
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
