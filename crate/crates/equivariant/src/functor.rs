use std::collections::BTreeMap;

use donaldson::{IntMat, WindowedComplex};
use serde::{Deserialize, Serialize};

use crate::{Flavor, UComplex};

/// Tot of the double complex D_{c,*} = N_{*−4c}: horizontal differential
/// (−1)^{|m|+1}·u from column c to c−1, vertical ∂_N, U = identity from
/// column c to c−1. Columns c ≥ 0 (+), c ≤ 0 (−) or all (∞).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorModel {
    pub flavor: Flavor,
    /// Degrees on which homology is meaningful.
    pub degrees: (i64, i64),
    /// Materialized on degrees[0] − 1 ..= degrees[1] + 1.
    pub complex: UComplex,
    /// Per degree: (column c, index into N_{n−4c}) of each basis vector.
    pub cells: BTreeMap<i64, Vec<(i64, usize)>>,
}

impl FunctorModel {
    pub fn index_of(&self, n: i64, cell: (i64, usize)) -> Option<usize> {
        self.cells.get(&n).and_then(|v| v.iter().position(|&c| c == cell))
    }
}

/// The totalization on homology degrees [lo, hi].
pub fn functor_model(n: &WindowedComplex, flavor: Flavor, lo: i64, hi: i64) -> FunctorModel {
    let (a, b) = (lo - 1, hi + 1);
    let support = n.support();
    let mut cells: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for t in a..=b {
        let mut v = Vec::new();
        let mut names = Vec::new();
        for &m in &support {
            if (t - m).rem_euclid(4) != 0 {
                continue;
            }
            let c = (t - m) / 4;
            if !flavor.has_column(c) {
                continue;
            }
            for (i, e) in n.basis[&m].iter().enumerate() {
                v.push((c, i));
                names.push(format!("{}[{}]@{}", e.name, e.level, c));
            }
        }
        cells.insert(t, v);
        labels.insert(t, names);
    }
    let index: BTreeMap<(i64, i64, usize), usize> = cells
        .iter()
        .flat_map(|(&t, v)| v.iter().enumerate().map(move |(k, &(c, i))| ((t, c, i), k)))
        .collect();
    let dim = |t: i64| cells.get(&t).map_or(0, Vec::len);
    let by_column = |m: &IntMat| {
        let mut cols = vec![Vec::new(); m.cols];
        for &(r, c, v) in &m.entries {
            cols[c].push((r, v));
        }
        cols
    };
    let dcols: BTreeMap<i64, Vec<Vec<(usize, i64)>>> = support.iter().map(|&m| (m, by_column(&n.differential(m)))).collect();
    let ucols: BTreeMap<i64, Vec<Vec<(usize, i64)>>> = support.iter().map(|&m| (m, by_column(&n.u_map(m)))).collect();

    let mut d = BTreeMap::new();
    let mut u = BTreeMap::new();
    for t in a..=b {
        let mut de = Vec::new();
        let mut ue = Vec::new();
        for (col, &(c, i)) in cells[&t].iter().enumerate() {
            let m = t - 4 * c;
            if t > a {
                for &(r, v) in &dcols[&m][i] {
                    de.push((index[&(t - 1, c, r)], col, v));
                }
                if flavor.has_column(c - 1) {
                    let sign = if m.rem_euclid(2) == 0 { -1 } else { 1 };
                    for &(r, v) in &ucols[&m][i] {
                        de.push((index[&(t - 1, c - 1, r)], col, sign * v));
                    }
                }
            }
            if t - 4 >= a && flavor.has_column(c - 1) {
                ue.push((index[&(t - 4, c - 1, i)], col, 1));
            }
        }
        if !de.is_empty() {
            d.insert(t, IntMat::from_entries(dim(t - 1), dim(t), de));
        }
        if !ue.is_empty() {
            u.insert(t, IntMat::from_entries(dim(t - 4), dim(t), ue));
        }
    }
    FunctorModel { flavor, degrees: (lo, hi), complex: UComplex { range: (a, b), basis: labels, d, u }, cells }
}
