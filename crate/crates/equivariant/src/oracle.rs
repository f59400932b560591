//! Literal bar-construction complexes for A = Λ[u], written in the bases
//! m[u|…|u] (flavor +) and the functionals on Z^p = [u|…|u] (flavor −).

use std::collections::BTreeMap;

use donaldson::{IntMat, WindowedComplex};
use exactmath::Field;
use serde::{Deserialize, Serialize};

use crate::functor::{functor_model, FunctorModel};
use crate::{EquivariantError, Flavor, UComplex};

/// Sign of the identification D⁺ column p ∋ m ↦ m[u|…|u] (p letters).
fn plus_sign(p: i64, m: i64) -> i64 {
    if (p * m + p * (p + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the identification f ↦ ((−1)^{p(p+1)/2} f(Z^p))_p.
fn minus_sign(p: i64) -> i64 {
    if (p * (p + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub flavor: Flavor,
    pub degrees: (i64, i64),
    pub oracle: UComplex,
    /// Homology dimensions of the double-complex model and of the oracle.
    pub model_dims: BTreeMap<i64, usize>,
    pub oracle_dims: BTreeMap<i64, usize>,
}

/// Builds the literal complex on the same cells as the double-complex
/// model: cell (c, i) is m_i[u|…|u] with p = c letters (flavor +) or the
/// functional sending Z^p ↦ m_i, p = −c (flavor −).
fn literal(n: &WindowedComplex, model: &FunctorModel) -> UComplex {
    let flavor = model.flavor;
    let (a, b) = model.complex.range;
    let cells = &model.cells;
    let pos = |t: i64, cell: (i64, usize)| cells.get(&t).and_then(|v| v.iter().position(|&x| x == cell));
    let mut basis = BTreeMap::new();
    let mut d = BTreeMap::new();
    let mut u = BTreeMap::new();
    for t in a..=b {
        let names = cells[&t]
            .iter()
            .map(|&(c, i)| {
                let m = &n.basis[&(t - 4 * c)][i];
                let bars = vec!["u"; c.unsigned_abs() as usize].join("|");
                match flavor {
                    Flavor::Plus => format!("{}[{}]·[{bars}]", m.name, m.level),
                    _ => format!("(Z^{} ↦ {}[{}])", -c, m.name, m.level),
                }
            })
            .collect();
        basis.insert(t, names);
        let mut de = Vec::new();
        let mut ue = Vec::new();
        for (col, &(c, i)) in cells[&t].iter().enumerate() {
            let m = t - 4 * c;
            let (dm, um) = (n.differential(m), n.u_map(m));
            match flavor {
                Flavor::Plus => {
                    let p = c;
                    // ∂ⁱ(m[u|…|u]) = (−1)^p ∂m[u|…|u]
                    for &(r, _, v) in dm.entries.iter().filter(|e| e.1 == i) {
                        if let Some(row) = pos(t - 1, (p, r)) {
                            de.push((row, col, if p % 2 == 0 { v } else { -v }));
                        }
                    }
                    // ∂ˢ(m[u|…|u]) = m·u[u|…|u] with one letter fewer
                    if p > 0 {
                        for &(r, _, v) in um.entries.iter().filter(|e| e.1 == i) {
                            if let Some(row) = pos(t - 1, (p - 1, r)) {
                                de.push((row, col, v));
                            }
                        }
                        // U(m[u|…|u]) = (−1)^{|m|+p} m[u|…|u] with one letter fewer
                        if let Some(row) = pos(t - 4, (p - 1, i)) {
                            ue.push((row, col, if (m + p).rem_euclid(2) == 0 { 1 } else { -1 }));
                        }
                    }
                }
                _ => {
                    let p = -c;
                    // (∂f)(Z^p) = ∂f(Z^p) − (−1)^{|f|+p} f(Z^{p−1})·u, with |f| ≡ |m|
                    for &(r, _, v) in dm.entries.iter().filter(|e| e.1 == i) {
                        if let Some(row) = pos(t - 1, (c, r)) {
                            de.push((row, col, v));
                        }
                    }
                    for &(r, _, v) in um.entries.iter().filter(|e| e.1 == i) {
                        if let Some(row) = pos(t - 1, (c - 1, r)) {
                            de.push((row, col, if (m + p).rem_euclid(2) == 0 { v } else { -v }));
                        }
                    }
                    // (Uf)(Z^{p+1}) = (−1)^{p+1} f(Z^p)
                    if let Some(row) = pos(t - 4, (c - 1, i)) {
                        ue.push((row, col, if (p + 1) % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
        }
        let dim = |s: i64| cells.get(&s).map_or(0, Vec::len);
        if t > a && !de.is_empty() {
            d.insert(t, IntMat::from_entries(dim(t - 1), dim(t), de));
        }
        if t - 4 >= a && !ue.is_empty() {
            u.insert(t, IntMat::from_entries(dim(t - 4), dim(t), ue));
        }
    }
    UComplex { range: (a, b), basis, d, u }
}

/// Checks that the sign map from the double-complex model of `flavor` to
/// the literal bar complex is a chain isomorphism commuting with U, and
/// computes homology on both sides over F.
pub fn bar_oracle<F: Field>(n: &WindowedComplex, flavor: Flavor, lo: i64, hi: i64) -> Result<OracleReport, EquivariantError> {
    if flavor == Flavor::Infinity {
        return Err(EquivariantError::WrongFlavor(flavor));
    }
    let model = functor_model(n, flavor, lo, hi);
    let oracle = literal(n, &model);
    let (a, b) = model.complex.range;
    let phi: BTreeMap<i64, IntMat> = (a..=b)
        .map(|t| {
            let cells = &model.cells[&t];
            let entries = cells.iter().enumerate().map(|(k, &(c, _))| {
                let s = match flavor {
                    Flavor::Plus => plus_sign(c, t - 4 * c),
                    _ => minus_sign(-c),
                };
                (k, k, s)
            });
            (t, IntMat::from_entries(cells.len(), cells.len(), entries))
        })
        .collect();
    let mismatch = |t: i64, lhs: &IntMat, rhs: &IntMat, square: &str| -> Result<(), EquivariantError> {
        if lhs == rhs {
            return Ok(());
        }
        let (l, r) = (lhs.to_dense(), rhs.to_dense());
        let col = (0..lhs.cols).find(|&c| (0..lhs.rows).any(|row| l[row][c] != r[row][c])).unwrap_or(0);
        Err(EquivariantError::OracleMismatch {
            flavor,
            generator: model.complex.basis[&t][col].clone(),
            square: square.into(),
        })
    };
    for t in a..=b {
        if t > a {
            let lhs = phi[&(t - 1)].compose(&model.complex.differential(t));
            let rhs = oracle.differential(t).compose(&phi[&t]);
            mismatch(t, &lhs, &rhs, "∂")?;
        }
        if t - 4 >= a {
            let lhs = phi[&(t - 4)].compose(&model.complex.u_map(t));
            let rhs = oracle.u_map(t).compose(&phi[&t]);
            mismatch(t, &lhs, &rhs, "U")?;
        }
    }
    let hm = model.complex.homology::<F>();
    let ho = oracle.homology::<F>();
    let model_dims = (lo..=hi).map(|n| (n, hm.dim(n))).collect();
    let oracle_dims = (lo..=hi).map(|n| (n, ho.dim(n))).collect();
    Ok(OracleReport { flavor, degrees: (lo, hi), oracle, model_dims, oracle_dims })
}
