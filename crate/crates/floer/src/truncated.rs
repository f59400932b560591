//! The spectral sequence of a finite filtered complex, computed from the
//! definition E^r_p = Z^r_p / (Z^{r−1}_{p−1} + ∂Z^{r−1}_{p+r−1}) with
//! Z^r_p = {x ∈ F_p : ∂x ∈ F_{p−r}}.

use std::collections::{BTreeMap, HashMap};

use donaldson::WindowedComplex;
use equivariant::{functor_model, Flavor};
use exactmath::{span_rank, Field, SparseMat};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSS {
    pub levels: (i64, i64),
    pub degrees: (i64, i64),
    /// Pages r at which some d^r is nonzero.
    pub nonzero_differentials: Vec<u32>,
    /// dim E^∞_{p,n}, keyed (p, n) with n the total degree.
    pub einfty: BTreeMap<(i64, i64), usize>,
    pub homology: BTreeMap<i64, usize>,
}

impl TruncatedSS {
    /// Degrees where Σ_p dim E^∞_{p,n} ≠ dim H_n.
    pub fn defects(&self) -> Vec<(i64, usize, usize)> {
        let mut sums: BTreeMap<i64, usize> = BTreeMap::new();
        for (&(_, n), &d) in &self.einfty {
            *sums.entry(n).or_default() += d;
        }
        self.homology
            .iter()
            .filter_map(|(&n, &h)| {
                let s = sums.get(&n).copied().unwrap_or(0);
                (s != h).then_some((n, s, h))
            })
            .collect()
    }
}

struct Filtered<F> {
    /// Per degree: filtration level of each basis vector.
    levels: BTreeMap<i64, Vec<i64>>,
    /// ∂ out of degree n, as dense columns over C_{n−1}.
    d: BTreeMap<i64, SparseMat<F>>,
    cache: HashMap<(i64, i64, i64), Vec<Vec<F>>>,
}

impl<F: Field> Filtered<F> {
    fn dim(&self, n: i64) -> usize {
        self.levels.get(&n).map_or(0, Vec::len)
    }

    /// Z^r_p in degree n: cycles mod F_{p−r} supported in F_p.
    fn z(&mut self, n: i64, p: i64, r: i64) -> Vec<Vec<F>> {
        let empty = Vec::new();
        let src = self.levels.get(&n).unwrap_or(&empty);
        let dst = self.levels.get(&(n - 1)).unwrap_or(&empty);
        // Normalize p and p − r to the levels that actually occur.
        let pe = src.iter().copied().filter(|&l| l <= p).max();
        let Some(pe) = pe else { return Vec::new() };
        let qe = dst.iter().copied().filter(|&l| l <= p - r).max().unwrap_or(i64::MIN);
        if let Some(z) = self.cache.get(&(n, pe, qe)) {
            return z.clone();
        }
        let cols: Vec<usize> = (0..src.len()).filter(|&j| src[j] <= pe).collect();
        let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] > qe).collect();
        let z = match self.d.get(&n) {
            Some(d) if !rows.is_empty() => {
                let mut rpos = vec![None; dst.len()];
                rows.iter().enumerate().for_each(|(k, &i)| rpos[i] = Some(k));
                let mut cpos = vec![None; src.len()];
                cols.iter().enumerate().for_each(|(k, &j)| cpos[j] = Some(k));
                let trips: Vec<(usize, usize, F)> = d
                    .entries()
                    .filter_map(|(i, j, v)| Some((rpos[i]?, cpos[j]?, v.clone())))
                    .collect();
                SparseMat::from_triplets(rows.len(), cols.len(), trips).kernel()
            }
            _ => (0..cols.len())
                .map(|k| (0..cols.len()).map(|i| if i == k { F::one() } else { F::zero() }).collect())
                .collect(),
        };
        let full: Vec<Vec<F>> = z
            .into_iter()
            .map(|v| {
                let mut w = vec![F::zero(); src.len()];
                for (k, x) in v.into_iter().enumerate() {
                    w[cols[k]] = x;
                }
                w
            })
            .collect();
        self.cache.insert((n, pe, qe), full.clone());
        full
    }

    fn e(&mut self, n: i64, p: i64, r: i64) -> usize {
        let top = span_rank(self.dim(n), &self.z(n, p, r));
        if top == 0 {
            return 0;
        }
        let mut bottom = self.z(n, p - 1, r - 1);
        if let Some(d) = self.d.get(&(n + 1)).cloned() {
            for y in self.z(n + 1, p + r - 1, r - 1) {
                bottom.push(d.mul_vec(&y));
            }
        }
        top - span_rank(self.dim(n), &bottom)
    }
}

/// The spectral sequence of the level filtration on the flavor functor of
/// a finite window, run until it stops changing, with the direct homology
/// alongside.
pub fn truncated_ss<F: Field>(n: &WindowedComplex, flavor: Flavor, lo: i64, hi: i64) -> TruncatedSS {
    let model = functor_model(n, flavor, lo, hi);
    let mut levels = BTreeMap::new();
    for (&t, cells) in &model.cells {
        let l: Vec<i64> = cells.iter().map(|&(c, i)| n.basis[&(t - 4 * c)][i].level).collect();
        levels.insert(t, l);
    }
    let d = (lo..=hi + 1).map(|t| (t, model.complex.differential(t).to_field::<F>())).collect();
    let mut f = Filtered { levels, d, cache: HashMap::new() };
    let all: Vec<i64> = f.levels.values().flatten().copied().collect();
    let (lmin, lmax) = (all.iter().copied().min().unwrap_or(0), all.iter().copied().max().unwrap_or(0));
    let rmax = (lmax - lmin + 2).max(1);
    let mut prev: Option<BTreeMap<(i64, i64), usize>> = None;
    let mut nonzero = Vec::new();
    let mut einfty = BTreeMap::new();
    for r in 1..=rmax {
        let mut page = BTreeMap::new();
        for t in lo..=hi {
            let mut ps: Vec<i64> = f.levels.get(&t).cloned().unwrap_or_default();
            ps.sort_unstable();
            ps.dedup();
            for p in ps {
                let e = f.e(t, p, r);
                if e > 0 {
                    page.insert((p, t), e);
                }
            }
        }
        if let Some(prev) = &prev {
            if *prev != page {
                nonzero.push(r as u32 - 1);
            }
        }
        einfty = page.clone();
        prev = Some(page);
    }
    let h = model.complex.homology::<F>();
    let homology = (lo..=hi).map(|t| (t, h.dim(t))).collect();
    TruncatedSS { levels: n.levels, degrees: (lo, hi), nonzero_differentials: nonzero, einfty, homology }
}
