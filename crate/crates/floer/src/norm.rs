use donaldson::{build_model, materialize_levels, Orientation};
use equivariant::{exact_triangle_check, Flavor};
use exactmath::Field;
use grouprep::GroupId;
use serde::{Deserialize, Serialize};

use crate::{assemble, default_margin, direct_invariants, run_to_einfty, FloerError, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormReport {
    pub group: GroupId,
    pub window: Window,
    pub plus_even: bool,
    pub minus_even: bool,
    /// Degrees where dim H^∞_n = dim H⁻_n + dim H⁺_{n−4} and H(ν) = 0 were
    /// checked.
    pub checked: Vec<i64>,
    /// Degrees where U: H^∞_n → H^∞_{n−4} was checked to be bijective.
    pub u_bijective: Vec<i64>,
}

/// I⁺ and I⁻ of Ȳ_Γ sit in even degrees, so the degree-3 norm map vanishes
/// and the triangle splits; both are checked on a window of degrees
/// [lo, hi] against direct homology.
pub fn norm_vanishing_and_splitting<F: Field>(g: GroupId, lo: i64, hi: i64) -> Result<NormReport, FloerError> {
    let m = build_model(g, Orientation::Bar)?;
    let even = |flavor| -> Result<bool, FloerError> {
        let (page, _) = run_to_einfty::<F>(&m, flavor)?;
        Ok(assemble(&page, &m)?.is_even())
    };
    let (plus_even, minus_even) = (even(Flavor::Plus)?, even(Flavor::Minus)?);
    if !plus_even || !minus_even {
        return Err(FloerError::SplittingViolation { degree: 0, detail: "an assembled module has odd-degree generators".into() });
    }
    let w = Window::around(lo, hi, default_margin(&m));
    let n = materialize_levels(&m, w.q, w.p);
    let report = exact_triangle_check::<F>(&n, lo, hi).map_err(|e| match e {
        equivariant::EquivariantError::TriangleViolation { degree, detail } => FloerError::SplittingViolation { degree, detail },
        e => FloerError::SplittingViolation { degree: lo, detail: e.to_string() },
    })?;
    let mut checked = Vec::new();
    for row in report.interior() {
        if row.nu_in != 0 || row.nu_out != 0 {
            return Err(FloerError::SplittingViolation { degree: row.degree, detail: format!("H(ν) has rank {}", row.nu_in.max(row.nu_out)) });
        }
        if row.h_infinity != row.h_minus + row.h_plus_shifted {
            return Err(FloerError::SplittingViolation {
                degree: row.degree,
                detail: format!("dim H^∞ = {} but dim H⁻ + dim H⁺[4] = {} + {}", row.h_infinity, row.h_minus, row.h_plus_shifted),
            });
        }
        checked.push(row.degree);
    }
    let inf = direct_invariants::<F>(&m, Flavor::Infinity, &w, 1);
    let mut u_bijective = Vec::new();
    for n in lo + 4..=hi {
        let (d, below) = (inf.dims[&n], inf.dims[&(n - 4)]);
        let rank = inf.u_ranks[&n].first().copied().unwrap_or(0);
        if d != below || rank != d {
            return Err(FloerError::SplittingViolation { degree: n, detail: format!("U on H^∞ has rank {rank} from dim {d} to dim {below}") });
        }
        u_bijective.push(n);
    }
    Ok(NormReport { group: g, window: w, plus_even, minus_even, checked, u_bijective })
}
