use std::collections::BTreeMap;

use crate::field::Field;

/// Sparse matrix stored row-wise; structurally zero entries are never kept.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, F>>,
}

/// Pivot selection during elimination. Ranks and kernel dimensions do not
/// depend on the rule; having two lets tests confirm that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Scan columns left to right, take the lowest available row.
    #[default]
    SmallestRow,
    /// Scan columns left to right, take the highest available row.
    LargestRow,
}

#[derive(Clone, Debug)]
pub struct RankKernelImage<F> {
    pub rank: usize,
    /// Basis of the null space, as dense vectors of length `ncols`.
    pub kernel: Vec<Vec<F>>,
    /// Basis of the column space, as dense vectors of length `nrows`.
    pub image: Vec<Vec<F>>,
}

/// Reduced row echelon form together with pivot positions `(row, col)`.
struct Rref<F> {
    rows: Vec<BTreeMap<usize, F>>,
    pivots: Vec<(usize, usize)>,
}

impl<F: Field> SparseMat<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.nrows && c < self.ncols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: F) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_triplets(self.nrows, self.ncols, self.entries().map(|(r, c, v)| (r, c, v.clone() * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch in add");
        let mut m = self.clone();
        for (r, c, v) in other.entries() {
            m.add_to(r, c, v.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in mul");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let e = acc.entry(*c).or_insert_with(F::zero);
                    *e = e.clone() + a.clone() * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols, "shape mismatch in mul_vec");
        self.rows
            .iter()
            .map(|row| row.iter().fold(F::zero(), |acc, (c, a)| acc + a.clone() * &v[*c]))
            .collect()
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows, "row mismatch in hcat");
        let mut m = Self::zeros(self.nrows, self.ncols + other.ncols);
        for (r, c, v) in self.entries() {
            m.rows[r].insert(c, v.clone());
        }
        for (r, c, v) in other.entries() {
            m.rows[r].insert(self.ncols + c, v.clone());
        }
        m
    }

    fn rref(&self, rule: PivotRule) -> Rref<F> {
        let mut rows = self.rows.clone();
        let mut used = vec![false; self.nrows];
        let mut pivots = Vec::new();
        for col in 0..self.ncols {
            let candidates = (0..self.nrows).filter(|&r| !used[r] && rows[r].contains_key(&col));
            let pick = match rule {
                PivotRule::SmallestRow => candidates.min(),
                PivotRule::LargestRow => candidates.max(),
            };
            let Some(pr) = pick else { continue };
            used[pr] = true;
            let inv = rows[pr][&col].inv();
            for v in rows[pr].values_mut() {
                *v = v.clone() * &inv;
            }
            let prow = rows[pr].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pr {
                    continue;
                }
                let Some(f) = row.get(&col).cloned() else { continue };
                for (c, v) in &prow {
                    let e = row.entry(*c).or_insert_with(F::zero);
                    *e = e.clone() - f.clone() * v;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
            pivots.push((pr, col));
        }
        Rref { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref(PivotRule::default()).pivots.len()
    }

    pub fn rank_kernel_image(&self) -> RankKernelImage<F> {
        self.rank_kernel_image_with(PivotRule::default())
    }

    pub fn rank_kernel_image_with(&self, rule: PivotRule) -> RankKernelImage<F> {
        let Rref { rows, pivots } = self.rref(rule);
        let pivot_cols: BTreeMap<usize, usize> = pivots.iter().map(|&(r, c)| (c, r)).collect();
        let mut kernel = Vec::new();
        for f in (0..self.ncols).filter(|c| !pivot_cols.contains_key(c)) {
            let mut v = vec![F::zero(); self.ncols];
            v[f] = F::one();
            for (&c, &r) in &pivot_cols {
                if let Some(x) = rows[r].get(&f) {
                    v[c] = -x.clone();
                }
            }
            kernel.push(v);
        }
        let image = pivot_cols.keys().map(|&c| self.column(c)).collect();
        RankKernelImage { rank: pivots.len(), kernel, image }
    }

    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.rank_kernel_image().kernel
    }

    pub fn image(&self) -> Vec<Vec<F>> {
        self.rank_kernel_image().image
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.nrows, "shape mismatch in solve");
        let aug = self.hcat(&Self::from_columns(self.nrows, &[b.to_vec()]));
        let Rref { rows, pivots } = aug.rref(PivotRule::default());
        let mut x = vec![F::zero(); self.ncols];
        for (r, c) in pivots {
            if c == self.ncols {
                return None;
            }
            x[c] = rows[r].get(&self.ncols).cloned().unwrap_or_else(F::zero);
        }
        Some(x)
    }
}

/// Rank of a family of dense vectors of common length `dim`.
pub fn span_rank<F: Field>(dim: usize, vecs: &[Vec<F>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    SparseMat::from_columns(dim, vecs).rank()
}

/// A basis (subset) of the span of `vecs`.
pub fn span_basis<F: Field>(dim: usize, vecs: &[Vec<F>]) -> Vec<Vec<F>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    SparseMat::from_columns(dim, vecs).image()
}
