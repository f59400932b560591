use exactmath::{Field, SparseMat};
use serde::{Deserialize, Serialize};

/// Sparse integer matrix; columns index the source basis, rows the target.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    /// (row, col, value) with nonzero values, sorted by (row, col).
    pub entries: Vec<(usize, usize, i64)>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, entries: Vec::new() }
    }

    /// Builds a matrix, summing duplicates and dropping zeros.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut m: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *m.entry((r, c)).or_insert(0) += v;
        }
        IntMat { rows, cols, entries: m.into_iter().filter(|(_, v)| *v != 0).map(|((r, c), v)| (r, c, v)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.iter().find(|e| e.0 == r && e.1 == c).map_or(0, |e| e.2)
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_entries(self.cols, self.rows, self.entries.iter().map(|&(r, c, v)| (c, r, v)))
    }

    pub fn scale(&self, k: i64) -> IntMat {
        IntMat::from_entries(self.rows, self.cols, self.entries.iter().map(|&(r, c, v)| (r, c, k * v)))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in compose");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = Vec::new();
        for &(r, k, a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.push((r, c, a * b));
            }
        }
        IntMat::from_entries(self.rows, other.cols, out)
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_entries(self.rows, self.cols, self.entries.iter().chain(&other.entries).copied())
    }

    pub fn to_field<F: Field>(&self) -> SparseMat<F> {
        SparseMat::from_triplets(self.rows, self.cols, self.entries.iter().map(|&(r, c, v)| (r, c, F::from_i64(v))))
    }

    pub fn rank<F: Field>(&self) -> usize {
        if self.entries.is_empty() {
            0
        } else {
            self.to_field::<F>().rank()
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }
}
