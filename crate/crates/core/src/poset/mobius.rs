use super::{ElementId, FinitePoset};

/// Möbius function values `μ(x, y)` for all pairs `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    // rows[x] holds (y, μ(x, y)) for every y ≥ x, sorted by y.
    rows: Vec<Vec<(ElementId, i64)>>,
}

impl MobiusTable {
    /// `μ(x, y)`, or `None` when `x ≰ y`.
    pub fn get(&self, x: ElementId, y: ElementId) -> Option<i64> {
        let row = &self.rows[x];
        row.binary_search_by_key(&y, |&(z, _)| z).ok().map(|i| row[i].1)
    }

    /// `μ(x, y)` for a pair known to satisfy `x ≤ y`.
    pub fn at(&self, x: ElementId, y: ElementId) -> i64 {
        self.get(x, y).expect("Möbius value requested for incomparable pair")
    }

    pub fn row(&self, x: ElementId) -> &[(ElementId, i64)] {
        &self.rows[x]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FinitePoset {
    /// The Möbius table, computed on first use.
    pub fn mobius(&self) -> &MobiusTable {
        self.mobius_cache.get_or_init(|| self.compute_mobius())
    }

    fn compute_mobius(&self) -> MobiusTable {
        let n = self.len();
        let mut scratch = vec![0i64; n];
        let mut rows = Vec::with_capacity(n);
        for x in 0..n {
            // Elements of [x, ·) in linear-extension order, so every z < y is
            // settled before y.
            let mut upper = self.strictly_above(x).clone();
            upper.insert(x);
            scratch[x] = 1;
            let mut row = vec![(x, 1)];
            for &y in self.linear_extension() {
                if y == x || !upper.contains(y) {
                    continue;
                }
                let mut sum = 0i64;
                for z in self.strictly_below(y).intersection(&upper) {
                    sum += scratch[z];
                }
                scratch[y] = -sum;
                row.push((y, -sum));
            }
            row.sort_unstable_by_key(|&(y, _)| y);
            rows.push(row);
        }
        MobiusTable { rows }
    }
}
