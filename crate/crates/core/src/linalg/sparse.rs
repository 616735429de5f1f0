use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};

/// Sparse rational matrix; entries are kept sorted by `(row, col)` with no
/// duplicates and no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: Vec::new() }
    }

    pub fn identity(size: usize) -> Self {
        Self { rows: size, cols: size, entries: (0..size).map(|i| (i, i, Rational::one())).collect() }
    }

    /// Sums duplicate coordinates and drops zeros.
    ///
    /// Panics if a coordinate is out of range.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *map.entry((r, c)).or_insert_with(Rational::zero) += v;
        }
        let entries = map.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        Self { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect();
        let mut m = Self::from_dense(&dense);
        if rows.is_empty() {
            m.cols = 0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        Self { rows: self.cols, cols: self.rows, entries }
    }

    /// Row-major sparse rows.
    pub fn row_lists(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    /// `self · rhs`; `None` on a shape mismatch.
    pub fn mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let rhs_rows = rhs.row_lists();
        let mut triplets = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rhs_rows[*k] {
                triplets.push((*r, *c, a * b));
            }
        }
        Some(Self::from_triplets(self.rows, rhs.cols, triplets))
    }

    /// Restriction to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_map = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            row_map[r] = i;
        }
        let mut col_map = vec![usize::MAX; self.cols];
        for (i, &c) in cols.iter().enumerate() {
            col_map[c] = i;
        }
        Self::from_triplets(
            rows.len(),
            cols.len(),
            self.entries.iter().filter_map(|(r, c, v)| {
                let (nr, nc) = (row_map[*r], col_map[*c]);
                (nr != usize::MAX && nc != usize::MAX).then(|| (nr, nc, v.clone()))
            }),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Coordinate dump, one `row col p/q` line per entry.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in &self.entries {
            out.push_str(&format!("{r} {c} {}\n", format_rational(v)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_summed_and_zeros_dropped() {
        let one = Rational::one();
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, one.clone()), (0, 1, -one.clone()), (1, 0, one.clone())]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), one);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_integers(&[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::from_integers(&[vec![1, 0], vec![3, 1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_integers(&[vec![7, 2], vec![3, 1]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&SparseMatrix::zeros(3, 1)).is_none());
    }

    #[test]
    fn submatrix_and_dump() {
        let m = SparseMatrix::from_integers(&[vec![1, 0, 2], vec![0, 3, 0]]);
        let s = m.submatrix(&[1], &[1, 2]);
        assert_eq!(s, SparseMatrix::from_integers(&[vec![3, 0]]));
        assert_eq!(m.dump(), "0 0 1\n0 2 2\n1 1 3\n");
    }
}
