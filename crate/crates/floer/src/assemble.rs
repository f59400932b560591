use donaldson::{psi_matrix, DonaldsonModel, Orientation};
use equivariant::{orbit_family, Correction, Family, Flavor, Periodicity, PresentedModule, Shape};
use exactmath::Field;
use grouprep::QuatKind;

use crate::page::Page;
use crate::subspace::Subspace;
use crate::FloerError;

/// A minimal generator of an E^∞ column, in E¹ coordinates.
#[derive(Clone, Debug)]
pub struct ColumnGenerator<F> {
    pub column: i64,
    pub row: i64,
    pub vector: Vec<F>,
    pub name: String,
}

/// Over Q, clears denominators so generators print with integer
/// coefficients.
fn integral<F: Field>(v: &[F]) -> Vec<F> {
    if F::characteristic() != 0 {
        return v.to_vec();
    }
    let lcm = v
        .iter()
        .filter_map(|x| x.to_string().split_once('/').and_then(|(_, d)| d.parse::<i64>().ok()))
        .fold(1i64, |a, b| a / gcd(a, b) * b);
    v.iter().map(|x| x.clone() * &F::from_i64(lcm)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combination<F: Field>(names: &[String], v: &[F]) -> String {
    let v = &integral(v)[..];
    // Normalize the sign so that the first coefficient prints positive.
    let first = v.iter().find(|x| !x.is_zero()).cloned();
    let flip = first.is_some_and(|x| x.to_string().starts_with('-'));
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let c = if flip { -c.clone() } else { c.clone() };
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if neg {
            out.push('−');
        } else if !out.is_empty() {
            out.push('+');
        }
        if mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(name);
    }
    out
}

/// Checks that the flavor-− E^∞ columns are free over R[U] and returns
/// minimal generators: U must be injective on E^∞ and map each row into
/// the next one, and the h-row must be gone.
pub fn einfty_generators<F: Field>(page: &Page<F>) -> Result<Vec<ColumnGenerator<F>>, FloerError> {
    let mut out = Vec::new();
    for s in page.columns() {
        let rows: Vec<i64> = page.entries.keys().filter(|k| k.0 == s).map(|k| k.1).rev().collect();
        let mut images: std::collections::BTreeMap<i64, Subspace<F>> = Default::default();
        for &t in &rows {
            let e = &page.entries[&(s, t)];
            if e.gens.iter().any(|g| g.letter == "h") {
                if e.dim() > 0 {
                    return Err(FloerError::FreenessFailure { column: s, degree: s + t, detail: "U-torsion h-classes survive".into() });
                }
                continue;
            }
            // E^∞ here is the cycle space (nothing hits rows t ≤ 2).
            let mut span = images.remove(&t).unwrap_or_else(|| Subspace::zero(e.gens.len()));
            let names: Vec<String> = e.gens.iter().map(|g| g.name.clone()).collect();
            for b in e.cycles.basis() {
                if span.insert(&b) {
                    out.push(ColumnGenerator { column: s, row: t, name: combination(&names, &b), vector: b });
                }
            }
            debug_assert!(span.equals(&e.cycles));
            // Push E^∞_{s,t} down by U.
            let Some(next) = page.entries.get(&(s, t - 4)) else { continue };
            let mut image = Subspace::zero(next.gens.len());
            for b in e.cycles.basis() {
                let mut v = vec![F::zero(); next.gens.len()];
                for (g, c) in e.gens.iter().zip(&b) {
                    if let Some(p) = g.u_power() {
                        if let Some(i) = next.position(g.vertex, &g.letter, p) {
                            v[i] = v[i].clone() + c;
                        }
                    }
                }
                if !next.cycles.contains(&v) {
                    return Err(FloerError::FreenessFailure { column: s, degree: s + t, detail: "U leaves E^∞".into() });
                }
                image.insert(&v);
            }
            if image.rank() < e.cycles.rank() {
                return Err(FloerError::FreenessFailure { column: s, degree: s + t, detail: "U has a kernel".into() });
            }
            images.insert(t - 4, image);
        }
    }
    // Generators in the bottom rows are truncation artifacts.
    let floor = page.t_range.0 + 8;
    Ok(out.into_iter().filter(|g| g.row >= floor).collect())
}

fn orbit_families(m: &DonaldsonModel, flavor: Flavor, sym: impl Fn(usize) -> String) -> (Vec<Family>, Vec<Option<usize>>) {
    let mut fams = Vec::new();
    let mut index = Vec::new();
    for (v, vert) in m.sgraph.vertices.iter().enumerate() {
        let level = match m.orientation {
            Orientation::Bar => vert.j,
            Orientation::Std => vert.i,
        } as i64;
        match orbit_family(vert.rep.kind, flavor, level, &sym(v)) {
            Some(f) => {
                index.push(Some(fams.len()));
                fams.push(f);
            }
            None => index.push(None),
        }
    }
    (fams, index)
}

/// Solves the extension problem for an E^∞ page.
pub fn assemble<F: Field>(page: &Page<F>, m: &DonaldsonModel) -> Result<PresentedModule, FloerError> {
    let name = |v: usize| m.sgraph.vertices[v].rep.name.clone();
    match (m.orientation, page.flavor) {
        (Orientation::Bar, Flavor::Minus) => {
            let families = einfty_generators(page)?
                .into_iter()
                .map(|g| {
                    let single = g.vector.iter().filter(|x| !x.is_zero()).count() == 1 && !g.name.starts_with(char::is_numeric);
                    let symbol = if single { g.name.clone() } else { format!("({})", g.name) };
                    Family { name: g.name, symbol, level: g.column, offset: g.row, shape: Shape::Down { step: 4 } }
                })
                .collect();
            Ok(PresentedModule { periodicity: Periodicity::Sum, families, corrections: Vec::new() })
        }
        (Orientation::Bar, Flavor::Plus) => {
            // U on the bottom class of each orbit is ψ.
            let (families, index) = orbit_families(m, Flavor::Plus, name);
            let psi = psi_matrix(m);
            let mut corrections = Vec::new();
            for v in 0..m.sgraph.len() {
                for (rho, row) in psi.iter().enumerate() {
                    if row[v] != 0 {
                        corrections.push(Correction { from: index[v].unwrap(), to: index[rho].unwrap(), drop: 4, coeff: row[v] });
                    }
                }
            }
            Ok(PresentedModule { periodicity: Periodicity::ProductUp, families, corrections })
        }
        (_, Flavor::Infinity) => {
            let (families, _) = orbit_families(m, Flavor::Infinity, name);
            Ok(PresentedModule { periodicity: Periodicity::ProductDown, families, corrections: Vec::new() })
        }
        (Orientation::Std, Flavor::Minus) => {
            // U on h_α is read off the differential leaving b_α.
            let (families, index) = orbit_families(m, Flavor::Minus, name);
            let corrections = m
                .differential
                .iter()
                .map(|t| {
                    let (a, w) = (m.generators[t.from].vertex, m.generators[t.to].vertex);
                    debug_assert_eq!(m.sgraph.vertices[a].rep.kind, QuatKind::Irreducible);
                    Correction { from: index[a].unwrap(), to: index[w].unwrap(), drop: t.drop, coeff: t.coeff }
                })
                .collect();
            Ok(PresentedModule { periodicity: Periodicity::Sum, families, corrections })
        }
        (Orientation::Std, Flavor::Plus) => {
            Err(FloerError::Unsupported("I⁺(Y_Γ) is assembled as the dual of I⁻(Ȳ_Γ)".into()))
        }
    }
}
