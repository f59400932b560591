use std::collections::BTreeMap;

use exactmath::Field;
use serde::{Deserialize, Serialize};

use crate::chain::IntMat;
use crate::{DonaldsonError, DonaldsonModel};

/// A basis vector of a window: generator `gen` of the model moved up
/// `shift` periods.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisElem {
    pub name: String,
    pub gen: usize,
    pub shift: i64,
    /// Filtration level: grading + 8·shift.
    pub level: i64,
    pub degree: i64,
}

/// F_p/F_q of a Donaldson model, clipped to a degree range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowedComplex {
    /// Filtration levels kept: q < level ≤ p.
    pub levels: (i64, i64),
    pub degrees: (i64, i64),
    pub basis: BTreeMap<i64, Vec<BasisElem>>,
    /// ∂: C_n → C_{n−1}, keyed by n.
    pub d: BTreeMap<i64, IntMat>,
    /// Right action of u: C_n → C_{n+3}, keyed by n.
    pub u: BTreeMap<i64, IntMat>,
}

impl WindowedComplex {
    /// A complex with the given bases and maps; missing maps are zero.
    pub fn from_parts(
        levels: (i64, i64),
        degrees: (i64, i64),
        basis: BTreeMap<i64, Vec<BasisElem>>,
        d: BTreeMap<i64, IntMat>,
        u: BTreeMap<i64, IntMat>,
    ) -> Self {
        WindowedComplex { levels, degrees, basis, d, u }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_dim() == 0
    }

    /// Err(EmptyWindow) for a window with no generators.
    pub fn nonempty(self) -> Result<Self, DonaldsonError> {
        if self.is_empty() {
            Err(DonaldsonError::EmptyWindow)
        } else {
            Ok(self)
        }
    }

    /// Degrees carrying at least one basis vector.
    pub fn support(&self) -> Vec<i64> {
        self.basis.iter().filter(|(_, b)| !b.is_empty()).map(|(&n, _)| n).collect()
    }

    pub fn differential(&self, n: i64) -> IntMat {
        self.d.get(&n).cloned().unwrap_or_else(|| IntMat::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn u_map(&self, n: i64) -> IntMat {
        self.u.get(&n).cloned().unwrap_or_else(|| IntMat::zeros(self.dim(n + 3), self.dim(n)))
    }

    /// Whether ∂∘∂ = 0, u∘u = 0 and ∂u = u∂ hold on the integer matrices.
    pub fn check_axioms(&self) -> Result<(), String> {
        for &n in self.basis.keys() {
            if !self.differential(n - 1).compose(&self.differential(n)).is_zero() {
                return Err(format!("∂∂ ≠ 0 out of degree {n}"));
            }
            if !self.u_map(n + 3).compose(&self.u_map(n)).is_zero() {
                return Err(format!("uu ≠ 0 out of degree {n}"));
            }
            let du = self.differential(n + 3).compose(&self.u_map(n));
            let ud = self.u_map(n - 1).compose(&self.differential(n));
            if du != ud {
                return Err(format!("∂u ≠ u∂ out of degree {n}"));
            }
        }
        Ok(())
    }

    /// dim H_n over F.
    pub fn homology_dim<F: Field>(&self, n: i64) -> usize {
        self.dim(n) - self.differential(n).rank::<F>() - self.differential(n + 1).rank::<F>()
    }

    pub fn homology_dims<F: Field>(&self) -> BTreeMap<i64, usize> {
        self.basis.keys().map(|&n| (n, self.homology_dim::<F>(n))).filter(|&(_, h)| h > 0).collect()
    }

    /// The transpose dual: degree n ↦ −n, ∂ ↦ ∂ᵀ, u ↦ uᵀ, levels
    /// negated.
    pub fn dual(&self) -> WindowedComplex {
        let basis = self
            .basis
            .iter()
            .map(|(&n, b)| {
                let b = b.iter().map(|e| BasisElem { degree: -e.degree, level: -e.level, ..e.clone() }).collect();
                (-n, b)
            })
            .collect();
        // ∂_n: C_n → C_{n−1} dualizes to C^∨_{−n+1} → C^∨_{−n}.
        let d = self.d.iter().map(|(&n, m)| (1 - n, m.transpose())).collect();
        let u = self.u.iter().map(|(&n, m)| (-n - 3, m.transpose())).collect();
        WindowedComplex {
            levels: (-self.levels.1, -self.levels.0),
            degrees: (-self.degrees.1, -self.degrees.0),
            basis,
            d,
            u,
        }
    }

    /// The sub-complex on the degree range [lo, hi] (brutal truncation).
    pub fn clip_degrees(&self, lo: i64, hi: i64) -> WindowedComplex {
        let keep = |n: i64| lo <= n && n <= hi;
        WindowedComplex {
            levels: self.levels,
            degrees: (lo.max(self.degrees.0), hi.min(self.degrees.1)),
            basis: self.basis.iter().filter(|(&n, _)| keep(n)).map(|(&n, b)| (n, b.clone())).collect(),
            d: self.d.iter().filter(|(&n, _)| keep(n) && keep(n - 1)).map(|(&n, m)| (n, m.clone())).collect(),
            u: self.u.iter().filter(|(&n, _)| keep(n) && keep(n + 3)).map(|(&n, m)| (n, m.clone())).collect(),
        }
    }
}

/// F_p M / F_q M restricted to degrees [lo, hi].
///
/// A window with q ≥ p, or one that catches no generator, is the zero
/// complex; [`WindowedComplex::nonempty`] turns that into `EmptyWindow`.
pub fn materialize_window(
    m: &DonaldsonModel,
    q: i64,
    p: i64,
    lo: i64,
    hi: i64,
) -> Result<WindowedComplex, DonaldsonError> {
    if lo > hi {
        return Err(DonaldsonError::InvalidWindow(format!("degree range [{lo}, {hi}] is empty")));
    }
    let mut basis: BTreeMap<i64, Vec<BasisElem>> = BTreeMap::new();
    if q < p {
        for (gen, g) in m.generators.iter().enumerate() {
            let base = g.grading as i64;
            let first = (q + 1 - base).div_euclid(8) + i64::from((q + 1 - base).rem_euclid(8) != 0);
            let mut shift = first;
            while base + 8 * shift <= p {
                let level = base + 8 * shift;
                let degree = level + g.t as i64;
                if lo <= degree && degree <= hi {
                    basis.entry(degree).or_default().push(BasisElem { name: g.name(), gen, shift, level, degree });
                }
                shift += 1;
            }
        }
    }
    for b in basis.values_mut() {
        b.sort_by_key(|e| (e.shift, e.gen));
    }
    let index: BTreeMap<(usize, i64), (i64, usize)> = basis
        .iter()
        .flat_map(|(&n, b)| b.iter().enumerate().map(move |(k, e)| ((e.gen, e.level), (n, k))))
        .collect();
    let dims: BTreeMap<i64, usize> = basis.iter().map(|(&n, b)| (n, b.len())).collect();
    let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);

    let mut d_entries: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
    let mut u_entries: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
    let add = |terms: &[crate::Term], out: &mut BTreeMap<i64, Vec<(usize, usize, i64)>>| {
        for term in terms {
            for (&(gen, level), &(n, col)) in &index {
                if gen != term.from {
                    continue;
                }
                if let Some(&(tn, row)) = index.get(&(term.to, level - term.drop)) {
                    out.entry(n).or_default().push((row, col, term.coeff));
                    debug_assert!(tn == n - 1 || tn == n + 3);
                }
            }
        }
    };
    add(&m.differential, &mut d_entries);
    add(&m.u_action, &mut u_entries);
    let d = d_entries.into_iter().map(|(n, e)| (n, IntMat::from_entries(dim(n - 1), dim(n), e))).collect();
    let u = u_entries.into_iter().map(|(n, e)| (n, IntMat::from_entries(dim(n + 3), dim(n), e))).collect();
    Ok(WindowedComplex { levels: (q, p), degrees: (lo, hi), basis, d, u })
}

/// The full level window: every generator degree of (q, p] is kept.
pub fn materialize_levels(m: &DonaldsonModel, q: i64, p: i64) -> WindowedComplex {
    materialize_window(m, q, p, q + 1, p + 3).expect("nonempty degree range")
}

/// Generators expected in a window by direct count: Σ over generators of
/// the number of shifts landing in both ranges.
pub fn generator_census(m: &DonaldsonModel, q: i64, p: i64, lo: i64, hi: i64) -> usize {
    let mut count = 0;
    for g in &m.generators {
        for level in q + 1..=p {
            let degree = level + g.t as i64;
            if (level - g.grading as i64).rem_euclid(8) == 0 && lo <= degree && degree <= hi {
                count += 1;
            }
        }
    }
    count
}
