use std::collections::BTreeMap;

use donaldson::{IntMat, WindowedComplex};
use exactmath::Field;
use serde::{Deserialize, Serialize};

use crate::functor::{functor_model, FunctorModel};
use crate::{EquivariantError, Flavor, UComplex};

/// The norm map ν: Tot⁺ → Tot⁻ (degree 3), the homotopy ψ_s, and the cone
/// of ν with its adjusted U, on homology degrees [lo, hi].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormData {
    pub plus: FunctorModel,
    pub minus: FunctorModel,
    pub infinity: FunctorModel,
    /// ν: Tot⁺_n → Tot⁻_{n+3}, x ↦ (−1)^{|x₀|} x₀·u in column 0.
    pub nu: BTreeMap<i64, IntMat>,
    /// ψ_s: Tot⁺_n → Tot⁻_n, x ↦ x₀ in column 0.
    pub psi: BTreeMap<i64, IntMat>,
    /// Cone_k = Tot⁻_k ⊕ Tot⁺_{k−4}, ∂ = [[∂⁻, −ν], [0, ∂⁺]], U = [[U, ψ_s], [0, U]].
    pub cone: UComplex,
}

/// Margin of extra degrees materialized for Tot^± around [lo, hi].
const MARGIN: i64 = 8;

pub fn norm_data(n: &WindowedComplex, lo: i64, hi: i64) -> NormData {
    let plus = functor_model(n, Flavor::Plus, lo - MARGIN, hi + MARGIN);
    let minus = functor_model(n, Flavor::Minus, lo - MARGIN, hi + MARGIN);
    let infinity = functor_model(n, Flavor::Infinity, lo, hi);
    let (a, b) = plus.complex.range;

    let mut nu = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for t in a..=b {
        let mut ne = Vec::new();
        let mut pe = Vec::new();
        for (col, &(c, i)) in plus.cells[&t].iter().enumerate() {
            if c != 0 {
                continue;
            }
            if let Some(row) = minus.index_of(t, (0, i)) {
                pe.push((row, col, 1));
            }
            if t + 3 <= b {
                let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
                for &(r, _, v) in n.u_map(t).entries.iter().filter(|e| e.1 == i) {
                    ne.push((minus.index_of(t + 3, (0, r)).expect("column 0 present"), col, sign * v));
                }
            }
        }
        nu.insert(t, IntMat::from_entries(minus.complex.dim(t + 3), plus.complex.dim(t), ne));
        psi.insert(t, IntMat::from_entries(minus.complex.dim(t), plus.complex.dim(t), pe));
    }

    let cone = cone_complex(&plus.complex, &minus.complex, &nu, &psi, infinity.complex.range);
    NormData { plus, minus, infinity, nu, psi, cone }
}

fn block(rows: (usize, usize), cols: (usize, usize), parts: [(usize, usize, &IntMat); 3]) -> IntMat {
    let mut entries = Vec::new();
    for (r0, c0, m) in parts {
        entries.extend(m.entries.iter().map(|&(r, c, v)| (r0 + r, c0 + c, v)));
    }
    IntMat::from_entries(rows.0 + rows.1, cols.0 + cols.1, entries)
}

fn cone_complex(
    plus: &UComplex,
    minus: &UComplex,
    nu: &BTreeMap<i64, IntMat>,
    psi: &BTreeMap<i64, IntMat>,
    range: (i64, i64),
) -> UComplex {
    let (a, b) = range;
    let mut basis = BTreeMap::new();
    for k in a..=b {
        let mut names: Vec<String> = minus.basis.get(&k).cloned().unwrap_or_default().into_iter().map(|s| format!("−:{s}")).collect();
        names.extend(plus.basis.get(&(k - 4)).cloned().unwrap_or_default().into_iter().map(|s| format!("+:{s}")));
        basis.insert(k, names);
    }
    let mut d = BTreeMap::new();
    let mut u = BTreeMap::new();
    for k in a..=b {
        let src = (minus.dim(k), plus.dim(k - 4));
        if k > a {
            let dst = (minus.dim(k - 1), plus.dim(k - 5));
            let nu_part = nu[&(k - 4)].scale(-1);
            d.insert(k, block(dst, src, [(0, 0, &minus.differential(k)), (0, src.0, &nu_part), (dst.0, src.0, &plus.differential(k - 4))]));
        }
        if k - 4 >= a {
            let dst = (minus.dim(k - 4), plus.dim(k - 8));
            u.insert(k, block(dst, src, [(0, 0, &minus.u_map(k)), (0, src.0, &psi[&(k - 4)]), (dst.0, src.0, &plus.u_map(k - 4))]));
        }
    }
    UComplex { range, basis, d, u }
}

impl NormData {
    /// ν∂ = −∂ν on every degree where both sides are materialized.
    pub fn check_chain_map(&self) -> Result<(), String> {
        let (a, b) = self.plus.complex.range;
        for t in a + 1..=b - 3 {
            let lhs = self.nu[&(t - 1)].compose(&self.plus.complex.differential(t));
            let rhs = self.minus.complex.differential(t + 3).compose(&self.nu[&t]).scale(-1);
            if lhs != rhs {
                return Err(format!("ν∂ ≠ −∂ν out of degree {t}"));
            }
        }
        Ok(())
    }

    /// νU − Uν = ∂ψ_s − ψ_s∂.
    pub fn check_homotopy(&self) -> Result<(), String> {
        let (a, b) = self.plus.complex.range;
        let (p, m) = (&self.plus.complex, &self.minus.complex);
        for t in a + 4..=b - 3 {
            let lhs = self.nu[&(t - 4)].compose(&p.u_map(t)).add(&m.u_map(t + 3).compose(&self.nu[&t]).scale(-1));
            let rhs = m.differential(t).compose(&self.psi[&t]).add(&self.psi[&(t - 1)].compose(&p.differential(t)).scale(-1));
            if t > a && lhs != rhs {
                return Err(format!("νU − Uν ≠ ∂ψ − ψ∂ out of degree {t}"));
            }
        }
        Ok(())
    }

    /// The coordinate identification Cone(ν) ≅ Tot^∞: Tot⁻ column c ↦
    /// column c, Tot⁺ column p ↦ column p + 1. Checks that it is a bijection
    /// on every materialized degree and intertwines ∂ and U.
    pub fn check_cone_iso(&self) -> Result<(), String> {
        let inf = &self.infinity;
        let (a, b) = inf.complex.range;
        let mut perm: BTreeMap<i64, IntMat> = BTreeMap::new();
        for k in a..=b {
            let mut entries = Vec::new();
            for (col, &(c, i)) in self.minus.cells[&k].iter().enumerate() {
                let row = inf.index_of(k, (c, i)).ok_or_else(|| format!("no Tot^∞ cell for −{:?} in degree {k}", (c, i)))?;
                entries.push((row, col, 1));
            }
            let off = self.minus.cells[&k].len();
            for (col, &(p, i)) in self.plus.cells[&(k - 4)].iter().enumerate() {
                let row = inf.index_of(k, (p + 1, i)).ok_or_else(|| format!("no Tot^∞ cell for +{:?} in degree {k}", (p, i)))?;
                entries.push((row, off + col, 1));
            }
            let dim = inf.complex.dim(k);
            if entries.len() != dim || self.cone.dim(k) != dim {
                return Err(format!("cone and Tot^∞ differ in size in degree {k}"));
            }
            perm.insert(k, IntMat::from_entries(dim, dim, entries));
        }
        for k in a..=b {
            if k > a && perm[&(k - 1)].compose(&self.cone.differential(k)) != inf.complex.differential(k).compose(&perm[&k]) {
                return Err(format!("∂ not intertwined in degree {k}"));
            }
            if k - 4 >= a && perm[&(k - 4)].compose(&self.cone.u_map(k)) != inf.complex.u_map(k).compose(&perm[&k]) {
                return Err(format!("U not intertwined in degree {k}"));
            }
        }
        Ok(())
    }

    /// Rank of H(ν): H⁺_n → H⁻_{n+3} for each n with both ends computed.
    pub fn norm_ranks<F: Field>(&self) -> Result<BTreeMap<i64, usize>, EquivariantError> {
        let hp = self.plus.complex.homology::<F>();
        let hm = self.minus.complex.homology::<F>();
        Ok((hp.valid.0..=hp.valid.1)
            .filter(|&n| hm.is_valid(n + 3))
            .map(|n| (n, hp.map_rank(n, &self.nu, 3, &hm)))
            .collect())
    }
}
