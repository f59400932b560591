//! The map ψ of the bar model: ψ(b_α) = Σ_β n_{βα} b_β over irreducible β,
//! of degree −4, with ψ(x)·u = (−1)^{|x|} ∂x.

use std::collections::BTreeMap;

use mckay::SGraph;

use crate::chain::IntMat;
use crate::window::WindowedComplex;
use crate::{DonaldsonModel, Orientation};

/// ψ on the vertex basis: entry [β][α] = n_{βα}, nonzero only for β
/// irreducible.
pub fn psi_matrix(m: &DonaldsonModel) -> Vec<Vec<i64>> {
    let k = m.sgraph.len();
    let mut psi = vec![vec![0; k]; k];
    for (&(beta, alpha), &n) in &m.labels {
        psi[beta][alpha] = n;
    }
    psi
}

/// ψ^r on the vertex basis, by repeated multiplication.
pub fn psi_power(m: &DonaldsonModel, r: u32) -> Vec<Vec<i64>> {
    let psi = psi_matrix(m);
    let k = psi.len();
    let mut acc: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..r {
        acc = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| psi[i][l] * acc[l][j]).sum()).collect())
            .collect();
    }
    acc
}

/// Product of labels along a walk α₀, α₁, …, α_r: Π n_{α_{i+1} α_i}; zero
/// unless every step goes along an edge into an irreducible vertex.
pub fn walk_weight(s: &SGraph, labels: &BTreeMap<(usize, usize), i64>, walk: &[usize]) -> i64 {
    walk.windows(2)
        .map(|w| if s.adjacent(w[0], w[1]) { labels.get(&(w[1], w[0])).copied().unwrap_or(0) } else { 0 })
        .product()
}

/// ψ on a window of the bar model: C_n → C_{n−4}, keyed by n. Only the
/// b-generators are moved; ψ vanishes on t-generators.
pub fn psi_window(m: &DonaldsonModel, w: &WindowedComplex) -> BTreeMap<i64, IntMat> {
    assert_eq!(m.orientation, Orientation::Bar, "ψ is defined for the bar model");
    let mut index = BTreeMap::new();
    for (&n, b) in &w.basis {
        for (k, e) in b.iter().enumerate() {
            index.insert((e.gen, e.level), (n, k));
        }
    }
    let mut out = BTreeMap::new();
    for (&n, b) in &w.basis {
        let mut entries = Vec::new();
        for (col, e) in b.iter().enumerate() {
            let g = &m.generators[e.gen];
            if g.top {
                continue;
            }
            for (&(beta, alpha), &c) in &m.labels {
                if alpha != g.vertex {
                    continue;
                }
                if let Some(&(tn, row)) = index.get(&(m.bottom(beta), e.level - 4)) {
                    debug_assert_eq!(tn, n - 4);
                    entries.push((row, col, c));
                }
            }
        }
        out.insert(n, IntMat::from_entries(w.dim(n - 4), w.dim(n), entries));
    }
    out
}
