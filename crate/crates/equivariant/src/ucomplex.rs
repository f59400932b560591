use std::collections::BTreeMap;

use donaldson::IntMat;
use exactmath::{Field, SparseMat};
use serde::{Deserialize, Serialize};

/// A finite stretch of a chain complex with a degree −4 map U.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UComplex {
    /// Degrees whose chain groups are materialized.
    pub range: (i64, i64),
    pub basis: BTreeMap<i64, Vec<String>>,
    /// ∂: C_n → C_{n−1}, keyed by n.
    pub d: BTreeMap<i64, IntMat>,
    /// U: C_n → C_{n−4}, keyed by n.
    pub u: BTreeMap<i64, IntMat>,
}

impl UComplex {
    pub fn dim(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn differential(&self, n: i64) -> IntMat {
        self.d.get(&n).cloned().unwrap_or_else(|| IntMat::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn u_map(&self, n: i64) -> IntMat {
        self.u.get(&n).cloned().unwrap_or_else(|| IntMat::zeros(self.dim(n - 4), self.dim(n)))
    }

    /// ∂∂ = 0 and ∂U = U∂ wherever both sides are materialized.
    pub fn check(&self) -> Result<(), String> {
        let (lo, hi) = self.range;
        for n in lo..=hi {
            if n - 2 >= lo && !self.differential(n - 1).compose(&self.differential(n)).is_zero() {
                return Err(format!("∂∂ ≠ 0 out of degree {n}"));
            }
            if n - 5 >= lo && self.differential(n - 4).compose(&self.u_map(n)) != self.u_map(n - 1).compose(&self.differential(n)) {
                return Err(format!("∂U ≠ U∂ out of degree {n}"));
            }
        }
        Ok(())
    }

    pub fn homology<F: Field>(&self) -> Homology<F> {
        let (lo, hi) = self.range;
        let mut cycles = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        for n in lo..=hi {
            let dn = self.differential(n);
            let z = if dn.is_zero() || n == lo {
                (0..self.dim(n)).map(|i| unit::<F>(self.dim(n), i)).collect()
            } else {
                dn.to_field::<F>().kernel()
            };
            cycles.insert(n, z);
            let b = if n < hi { self.differential(n + 1).to_field::<F>() } else { SparseMat::zeros(self.dim(n), 0) };
            let rank = b.rank();
            boundaries.insert(n, (b, rank));
        }
        let u = self.u.iter().map(|(&n, m)| (n, m.to_field::<F>())).collect();
        Homology { valid: (lo + 1, hi - 1), dims: self.basis.iter().map(|(&n, b)| (n, b.len())).collect(), cycles, boundaries, u }
    }
}

fn unit<F: Field>(len: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[i] = F::one();
    v
}

/// Cycles and boundaries of a [`UComplex`] over F, degree by degree.
pub struct Homology<F> {
    /// Degrees where H is computed from a full three-term stretch.
    pub valid: (i64, i64),
    dims: BTreeMap<i64, usize>,
    cycles: BTreeMap<i64, Vec<Vec<F>>>,
    boundaries: BTreeMap<i64, (SparseMat<F>, usize)>,
    u: BTreeMap<i64, SparseMat<F>>,
}

impl<F: Field> Homology<F> {
    pub fn is_valid(&self, n: i64) -> bool {
        self.valid.0 <= n && n <= self.valid.1
    }

    pub fn dim(&self, n: i64) -> usize {
        match (self.cycles.get(&n), self.boundaries.get(&n)) {
            (Some(z), Some((_, b))) => z.len() - b,
            _ => 0,
        }
    }

    fn chain_dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Rank of the class map induced by `vecs` (chains in degree `n`).
    fn rank_in(&self, n: i64, vecs: &[Vec<F>]) -> usize {
        let Some((b, rb)) = self.boundaries.get(&n) else { return 0 };
        let vecs: Vec<Vec<F>> = vecs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        if vecs.is_empty() {
            return 0;
        }
        b.hcat(&SparseMat::from_columns(self.chain_dim(n), &vecs)).rank() - rb
    }

    /// Rank of U^k: H_n → H_{n−4k}.
    pub fn u_rank(&self, n: i64, k: u32) -> usize {
        let mut vecs = self.cycles.get(&n).cloned().unwrap_or_default();
        let mut m = n;
        for _ in 0..k {
            vecs = match self.u.get(&m) {
                Some(u) => vecs.iter().map(|v| u.mul_vec(v)).collect(),
                None => Vec::new(),
            };
            m -= 4;
        }
        self.rank_in(m, &vecs)
    }

    /// Rank of the map H_n → H'_{n+shift} induced by the chain map `f`
    /// (keyed by source degree).
    pub fn map_rank(&self, n: i64, f: &BTreeMap<i64, IntMat>, shift: i64, target: &Homology<F>) -> usize {
        let Some(f) = f.get(&n) else { return 0 };
        let f = f.to_field::<F>();
        let vecs: Vec<Vec<F>> = self.cycles.get(&n).map_or(Vec::new(), |z| z.iter().map(|v| f.mul_vec(v)).collect());
        target.rank_in(n + shift, &vecs)
    }

    /// Dimensions and U^k ranks (1 ≤ k ≤ kmax, both ends in range) on
    /// the degrees [lo, hi].
    pub fn invariants(&self, lo: i64, hi: i64, kmax: u32) -> ModuleInvariants {
        let mut inv = ModuleInvariants::default();
        for n in lo..=hi {
            inv.dims.insert(n, self.dim(n));
            let ranks: Vec<usize> = (1..=kmax).take_while(|&k| n - 4 * k as i64 >= lo).map(|k| self.u_rank(n, k)).collect();
            inv.u_ranks.insert(n, ranks);
        }
        inv
    }
}

/// Graded dimensions and U^k ranks of an R[U]-module on a degree range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub dims: BTreeMap<i64, usize>,
    /// `u_ranks[n][k−1]` = rank of U^k out of degree n.
    pub u_ranks: BTreeMap<i64, Vec<usize>>,
}

impl ModuleInvariants {
    /// Human-readable differences against `other`, restricted to the degrees
    /// accepted by `keep` (both ends of each U^k).
    pub fn mismatches(&self, other: &ModuleInvariants, keep: impl Fn(i64) -> bool) -> Vec<String> {
        let mut out = Vec::new();
        for (&n, &d) in &self.dims {
            if !keep(n) {
                continue;
            }
            let e = other.dims.get(&n).copied().unwrap_or(0);
            if d != e {
                out.push(format!("dim in degree {n}: {d} vs {e}"));
            }
            let (a, b) = (self.u_ranks.get(&n), other.u_ranks.get(&n));
            for k in 0..a.map_or(0, Vec::len).max(b.map_or(0, Vec::len)) {
                if !keep(n - 4 * (k as i64 + 1)) {
                    continue;
                }
                let x = a.and_then(|v| v.get(k)).copied();
                let y = b.and_then(|v| v.get(k)).copied();
                if x != y {
                    out.push(format!("rank U^{} out of degree {n}: {x:?} vs {y:?}", k + 1));
                }
            }
        }
        out
    }

    /// The dual module: degree n ↦ −n, U^k out of n ↦ U^k out of −n + 4k.
    pub fn dual(&self) -> ModuleInvariants {
        let dims = self.dims.iter().map(|(&n, &d)| (-n, d)).collect();
        let mut u_ranks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let lo = self.dims.keys().next().copied().unwrap_or(0);
        let hi = self.dims.keys().last().copied().unwrap_or(0);
        for n in -hi..=-lo {
            let ranks = (1..)
                .map_while(|k: i64| {
                    let src = -(n - 4 * k); // U^k: n → n−4k is dual to −(n−4k) → −n
                    self.u_ranks.get(&src).and_then(|v| v.get(k as usize - 1)).copied()
                })
                .collect();
            u_ranks.insert(n, ranks);
        }
        ModuleInvariants { dims, u_ranks }
    }
}
