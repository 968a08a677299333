//! Cellular chain complexes spanned by sets of simplices, and sparse column
//! reduction over `F_p`.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::field::PrimeField;
use super::HomologyError;
use crate::complex::{Face, SimplicialComplex};

/// Sparse column: `(row, value)` pairs sorted by row, values nonzero.
pub type SparseVec = Vec<(u32, u32)>;

/// `a + c * b`.
pub(crate) fn axpy(field: PrimeField, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, b[j].1)));
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Chain complex whose `k`-chains are spanned by a set of `k`-simplices.
///
/// The boundary of a cell keeps only those codimension-one faces that are
/// cells themselves. This is the chain complex of `Δ` when the cells are
/// all faces of `Δ` (the empty face included, giving reduced homology), and
/// the relative complex of `(Δ, Γ)` when the cells are the faces of `Δ`
/// outside `Γ`. Orientation follows the sorted vertex order: deleting the
/// vertex in position `i` carries the sign `(-1)^i`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    cells: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, u32>>,
}

impl ChainComplex {
    pub(crate) fn from_cells(cells: impl IntoIterator<Item = Face>) -> Self {
        let mut by_dim: Vec<Vec<Face>> = Vec::new();
        for c in cells {
            if by_dim.len() <= c.len() {
                by_dim.resize_with(c.len() + 1, Vec::new);
            }
            by_dim[c.len()].push(c);
        }
        for level in &mut by_dim {
            level.sort_unstable();
            level.dedup();
        }
        let index =
            by_dim.iter().map(|level| level.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect()).collect();
        ChainComplex { cells: by_dim, index }
    }

    /// The augmented chain complex of `Δ`.
    pub fn of_complex(complex: &SimplicialComplex) -> Self {
        Self::from_cells(complex.faces().iter().cloned())
    }

    /// The chain complex of the pair `(Δ, Γ)`.
    pub fn relative(delta: &SimplicialComplex, gamma: &SimplicialComplex) -> Result<Self, HomologyError> {
        let sub: HashSet<Face> =
            gamma.faces_in(delta).map_err(|_| HomologyError::NotASubcomplex)?.into_iter().collect();
        if !sub.iter().all(|f| delta.faces().contains(f)) {
            return Err(HomologyError::NotASubcomplex);
        }
        Ok(Self::from_cells(delta.faces().iter().filter(|f| !sub.contains(*f)).cloned()))
    }

    /// Largest dimension carrying cells (`-2` when there are none).
    pub fn top_dim(&self) -> isize {
        self.cells.iter().rposition(|l| !l.is_empty()).map_or(-2, |i| i as isize - 1)
    }

    pub fn cells(&self, dim: isize) -> &[Face] {
        usize::try_from(dim + 1).ok().and_then(|i| self.cells.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, face: &[u32]) -> Option<u32> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Boundary of the `j`-th cell of dimension `dim`.
    pub fn boundary_column(&self, field: PrimeField, dim: isize, j: usize) -> SparseVec {
        let cell = &self.cells(dim)[j];
        let mut col = Vec::with_capacity(cell.len());
        let mut facet = Vec::with_capacity(cell.len().saturating_sub(1));
        for skip in 0..cell.len() {
            facet.clear();
            facet.extend(cell.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            if let Some(row) = self.position(&facet) {
                let sign = if skip % 2 == 0 { 1 } else { field.neg(1) };
                col.push((row, sign));
            }
        }
        col.sort_unstable();
        col
    }

    pub fn boundary_matrix(&self, field: PrimeField, dim: isize) -> Vec<SparseVec> {
        (0..self.cells(dim).len()).map(|j| self.boundary_column(field, dim, j)).collect()
    }

    /// Ranks of `∂_k` for every `k`, computed from the top down with the
    /// clearing shortcut (a column whose cell is the pivot of a reduced
    /// column one degree up is a cycle and is skipped).
    fn boundary_ranks(&self, field: PrimeField) -> BTreeMap<isize, usize> {
        let mut ranks = BTreeMap::new();
        let mut cleared: HashSet<u32> = HashSet::new();
        let top = self.top_dim();
        for k in (0..=top).rev() {
            let red =
                Reduction::run(field, self.cells(k).len(), |j| self.boundary_column(field, k, j), &cleared, false);
            ranks.insert(k, red.rank());
            cleared = red.pivots.keys().copied().collect();
        }
        ranks
    }

    /// Betti numbers `dim H_k` for every dimension carrying cells.
    pub fn betti(&self, field: PrimeField) -> BTreeMap<isize, usize> {
        let ranks = self.boundary_ranks(field);
        let rank = |k: isize| ranks.get(&k).copied().unwrap_or(0);
        (-1..=self.top_dim())
            .filter(|&k| !self.cells(k).is_empty())
            .map(|k| (k, self.cells(k).len() - rank(k) - rank(k + 1)))
            .collect()
    }

    /// Cycle representatives for `H_dim` together with a way to read off
    /// the coordinates of any cycle.
    pub fn homology_basis(&self, field: PrimeField, dim: isize) -> HomologyBasis {
        let above = Reduction::run(
            field,
            self.cells(dim + 1).len(),
            |j| self.boundary_column(field, dim + 1, j),
            &HashSet::new(),
            false,
        );
        let cleared: HashSet<u32> = above.pivots.keys().copied().collect();
        let here =
            Reduction::run(field, self.cells(dim).len(), |j| self.boundary_column(field, dim, j), &cleared, true);

        let mut store: HashMap<u32, (SparseVec, Option<usize>)> = HashMap::new();
        for (&low, &col) in &above.pivots {
            store.insert(low, (above.reduced[col].clone(), None));
        }
        let mut reps = Vec::new();
        let v = here.v.expect("tracked");
        for j in 0..self.cells(dim).len() {
            if here.reduced[j].is_empty() && !cleared.contains(&(j as u32)) {
                store.insert(j as u32, (v[j].clone(), Some(reps.len())));
                reps.push(v[j].clone());
            }
        }
        HomologyBasis { field, dim, reps, store }
    }
}

/// Standard column reduction with pivots at the largest row index.
struct Reduction {
    reduced: Vec<SparseVec>,
    pivots: HashMap<u32, usize>,
    v: Option<Vec<SparseVec>>,
}

impl Reduction {
    fn run(
        field: PrimeField,
        ncols: usize,
        column: impl Fn(usize) -> SparseVec,
        skip: &HashSet<u32>,
        track: bool,
    ) -> Reduction {
        let mut reduced: Vec<SparseVec> = Vec::with_capacity(ncols);
        let mut pivots: HashMap<u32, usize> = HashMap::new();
        let mut v: Vec<SparseVec> = Vec::new();
        for j in 0..ncols {
            if skip.contains(&(j as u32)) {
                reduced.push(Vec::new());
                if track {
                    v.push(Vec::new());
                }
                continue;
            }
            let mut col = column(j);
            let mut vj: SparseVec = if track { vec![(j as u32, 1)] } else { Vec::new() };
            while let Some(&(low, val)) = col.last() {
                match pivots.get(&low) {
                    Some(&i) => {
                        let pv = reduced[i].last().unwrap().1;
                        let c = field.neg(field.mul(val, field.inv(pv)));
                        col = axpy(field, &col, c, &reduced[i]);
                        if track {
                            vj = axpy(field, &vj, c, &v[i]);
                        }
                    }
                    None => {
                        pivots.insert(low, j);
                        break;
                    }
                }
            }
            reduced.push(col);
            if track {
                v.push(vj);
            }
        }
        Reduction { reduced, pivots, v: track.then_some(v) }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A basis of `H_dim` of a [`ChainComplex`].
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    field: PrimeField,
    dim: isize,
    reps: Vec<SparseVec>,
    /// Basis of the cycle space keyed by pivot row: reduced boundaries
    /// (`None`) and homology representatives (their index).
    store: HashMap<u32, (SparseVec, Option<usize>)>,
}

impl HomologyBasis {
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of `cycle`; `None` if it is not a cycle.
    pub fn coordinates(&self, cycle: &[(u32, u32)]) -> Option<Vec<u32>> {
        let f = self.field;
        let mut coords = vec![0; self.reps.len()];
        let mut c: SparseVec = cycle.to_vec();
        while let Some(&(low, val)) = c.last() {
            let (vec, rep) = self.store.get(&low)?;
            let coef = f.mul(val, f.inv(vec.last().unwrap().1));
            if let Some(r) = rep {
                coords[*r] = f.add(coords[*r], coef);
            }
            c = axpy(f, &c, f.neg(coef), vec);
        }
        Some(coords)
    }
}

/// Rank of a small dense matrix over `F_p`.
pub fn dense_rank(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][c]);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = field.mul(m[r][c], inv);
                for cc in c..ncols {
                    let sub = field.mul(k, m[rank][cc]);
                    m[r][cc] = field.sub(m[r][cc], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}
