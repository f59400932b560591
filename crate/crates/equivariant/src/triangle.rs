use donaldson::WindowedComplex;
use exactmath::Field;
use serde::{Deserialize, Serialize};

use crate::norm::{norm_data, NormData};
use crate::EquivariantError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleRow {
    pub degree: i64,
    pub h_infinity: usize,
    pub h_minus: usize,
    /// dim H⁺_{n−4}.
    pub h_plus_shifted: usize,
    /// rank H(ν): H⁺_{n−3} → H⁻_n.
    pub nu_in: usize,
    /// rank H(ν): H⁺_{n−4} → H⁻_{n−1}.
    pub nu_out: usize,
    /// Away from the degree cutoffs.
    pub interior: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub rows: Vec<TriangleRow>,
}

impl TriangleReport {
    pub fn interior(&self) -> impl Iterator<Item = &TriangleRow> {
        self.rows.iter().filter(|r| r.interior)
    }

    /// Degrees at the edges where the identity fails (truncation artifacts).
    pub fn flagged(&self) -> Vec<i64> {
        self.rows.iter().filter(|r| !r.interior && !r.holds).map(|r| r.degree).collect()
    }
}

/// dim H^∞_n = dim coker(H(ν) into H⁻_n) + dim ker(H(ν) out of H⁺_{n−4})
/// for n in [lo, hi], from the long exact sequence of Cone(ν).
pub fn exact_triangle_check<F: Field>(n: &WindowedComplex, lo: i64, hi: i64) -> Result<TriangleReport, EquivariantError> {
    let nd = norm_data(n, lo, hi);
    triangle_from::<F>(&nd, lo, hi)
}

pub fn triangle_from<F: Field>(nd: &NormData, lo: i64, hi: i64) -> Result<TriangleReport, EquivariantError> {
    let hp = nd.plus.complex.homology::<F>();
    let hm = nd.minus.complex.homology::<F>();
    let hi_ = nd.infinity.complex.homology::<F>();
    let mut rows = Vec::new();
    for deg in lo..=hi {
        let nu_in = hp.map_rank(deg - 3, &nd.nu, 3, &hm);
        let nu_out = hp.map_rank(deg - 4, &nd.nu, 3, &hm);
        let row = TriangleRow {
            degree: deg,
            h_infinity: hi_.dim(deg),
            h_minus: hm.dim(deg),
            h_plus_shifted: hp.dim(deg - 4),
            nu_in,
            nu_out,
            interior: deg - 4 > lo && deg + 4 < hi,
            holds: hi_.dim(deg) == hm.dim(deg) - nu_in + hp.dim(deg - 4) - nu_out,
        };
        if row.interior && !row.holds {
            return Err(EquivariantError::TriangleViolation {
                degree: deg,
                detail: format!(
                    "H^∞ = {}, H⁻ = {}, H⁺[4] = {}, rank ν in/out = {}/{}",
                    row.h_infinity, row.h_minus, row.h_plus_shifted, nu_in, nu_out
                ),
            });
        }
        rows.push(row);
    }
    Ok(TriangleReport { rows })
}

/// Exactness of H(M)_n → H⁺_n → H⁺_{n−4} → H(M)_{n−1} by dimension count:
/// dim H(M)_n = dim coker(U: H⁺_{n+1} → H⁺_{n−3}) + dim ker(U: H⁺_n → H⁺_{n−4}).
pub fn u_sequence_check<F: Field>(n: &WindowedComplex, lo: i64, hi: i64) -> Result<(), String> {
    let plus = crate::functor_model(n, crate::Flavor::Plus, lo - 8, hi + 8);
    let h = plus.complex.homology::<F>();
    let hm = n_homology::<F>(n);
    for deg in lo..=hi {
        let coker = h.dim(deg - 3) - h.u_rank(deg + 1, 1);
        let ker = h.dim(deg) - h.u_rank(deg, 1);
        let lhs = hm(deg);
        if lhs != coker + ker {
            return Err(format!("degree {deg}: dim H(M) = {lhs}, coker U + ker U = {coker} + {ker}"));
        }
    }
    Ok(())
}

fn n_homology<F: Field>(n: &WindowedComplex) -> impl Fn(i64) -> usize + '_ {
    move |deg| if n.dim(deg) == 0 { 0 } else { n.homology_dim::<F>(deg) }
}
