use std::collections::BTreeMap;

use donaldson::{psi_power, DonaldsonModel, Orientation};
use equivariant::{orbit_family, Flavor, Shape};
use exactmath::{Field, SparseMat};
use grouprep::GroupId;
use serde::{Deserialize, Serialize};

use crate::subspace::Subspace;
use crate::FloerError;

/// One basis vector of E¹: the k-th power of the orbit generator of a
/// vertex (k = 0 for h_α, g_α).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Gen {
    pub vertex: usize,
    /// "U", "Z", "h", "V", "W", "g", "T" or "S".
    pub letter: String,
    pub power: i64,
    pub name: String,
}

impl E1Gen {
    /// The power reached by U (None when U kills the generator).
    pub fn u_power(&self) -> Option<i64> {
        match self.letter.as_str() {
            "U" | "T" => Some(self.power + 1),
            "Z" | "S" => Some(self.power + 2),
            "V" => (self.power > 0).then(|| self.power - 1),
            "W" => (self.power > 1).then(|| self.power - 2),
            _ => None,
        }
    }
}

/// E^r_{s,t} as a subquotient cycles/boundaries of E¹_{s,t}.
#[derive(Clone, Debug)]
pub struct Entry<F> {
    pub gens: Vec<E1Gen>,
    pub cycles: Subspace<F>,
    pub boundaries: Subspace<F>,
}

impl<F: Field> Entry<F> {
    pub fn dim(&self) -> usize {
        self.cycles.rank() - self.boundaries.rank()
    }

    pub fn position(&self, vertex: usize, letter: &str, power: i64) -> Option<usize> {
        self.gens.iter().position(|g| g.vertex == vertex && g.letter == letter && g.power == power)
    }
}

/// A differential d^{4r}: E_{s,t} → E_{s−4r,3}, on E¹ coordinates.
#[derive(Clone, Debug)]
pub struct Differential<F> {
    pub page: u32,
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub source_gens: Vec<String>,
    pub target_gens: Vec<String>,
    /// Chain-level coefficients of ∂_M∘ψ^{r−1}; `chain[row][col]`.
    pub chain: Vec<Vec<F>>,
    /// The same columns reduced modulo the earlier boundaries in the target.
    pub projected: Vec<Vec<F>>,
    pub rank: usize,
}

/// A page of the index spectral sequence in periodic mode: columns are
/// residues s mod 8.
#[derive(Clone, Debug)]
pub struct Page<F> {
    pub group: GroupId,
    pub orientation: Orientation,
    pub flavor: Flavor,
    pub index: u32,
    /// Rows t kept per column.
    pub t_range: (i64, i64),
    pub entries: BTreeMap<(i64, i64), Entry<F>>,
    pub ledger: Vec<Differential<F>>,
}

impl<F: Field> Page<F> {
    pub fn entry(&self, s: i64, t: i64) -> Option<&Entry<F>> {
        self.entries.get(&(s.rem_euclid(8), t))
    }

    pub fn dim(&self, s: i64, t: i64) -> usize {
        self.entry(s, t).map_or(0, Entry::dim)
    }

    pub fn columns(&self) -> Vec<i64> {
        let mut c: Vec<i64> = self.entries.keys().map(|k| k.0).collect();
        c.dedup();
        c
    }

    /// Whether some nonzero entry sits in odd total degree.
    pub fn has_odd_entries(&self) -> bool {
        self.entries.iter().any(|(&(s, t), e)| (s + t).rem_euclid(2) == 1 && e.dim() > 0)
    }

    /// Text table: one line per nonzero entry.
    pub fn table(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|(_, e)| e.dim() > 0)
            .map(|(&(s, t), e)| {
                let names: Vec<&str> = e.gens.iter().map(|g| g.name.as_str()).collect();
                format!("E^{}_{{{s},{t}}}: dim {} in span{{{}}}", self.index, e.dim(), names.join(", "))
            })
            .collect()
    }
}

/// Bound on the number of d^{4r} steps: #orbits + 2.
pub fn page_bound(m: &DonaldsonModel) -> u32 {
    m.sgraph.len() as u32 + 2
}

fn gen_name(letter: &str, vertex: &str, power: Option<i64>) -> String {
    match power {
        Some(k) => format!("{letter}_{vertex}^{k}"),
        None => format!("{letter}_{vertex}"),
    }
}

/// E¹_{s,t} = ⊕_{grading(α) ≡ s} H^•_A(α)_t, on rows |t| ≤ 4·(bound + 1).
pub fn e1_page<F: Field>(m: &DonaldsonModel, flavor: Flavor) -> Page<F> {
    let tmax = 4 * (page_bound(m) as i64 + 1);
    let mut gens: BTreeMap<(i64, i64), Vec<E1Gen>> = BTreeMap::new();
    for (v, vert) in m.sgraph.vertices.iter().enumerate() {
        let s = match m.orientation {
            Orientation::Bar => vert.j,
            Orientation::Std => vert.i,
        } as i64;
        let Some(fam) = orbit_family(vert.rep.kind, flavor, 0, "") else { continue };
        let name = &vert.rep.name;
        let mut push = |t: i64, power: Option<i64>| {
            if t.abs() <= tmax {
                let g = E1Gen { vertex: v, letter: fam.symbol.clone(), power: power.unwrap_or(0), name: gen_name(&fam.symbol, name, power) };
                gens.entry((s, t)).or_default().push(g);
            }
        };
        match fam.shape {
            Shape::Single => push(fam.offset, None),
            Shape::Up { step } => (0..=tmax / step).for_each(|k| push(fam.offset + step * k, Some(k))),
            Shape::Down { step } => (0..=tmax / step + 1).for_each(|k| push(fam.offset - step * k, Some(k))),
            Shape::Laurent { step } => (-tmax / step - 1..=tmax / step + 1).for_each(|k| push(fam.offset - step * k, Some(k))),
        }
    }
    let entries = gens
        .into_iter()
        .map(|(k, g)| {
            let n = g.len();
            (k, Entry { gens: g, cycles: Subspace::full(n), boundaries: Subspace::zero(n) })
        })
        .collect();
    Page {
        group: m.group,
        orientation: m.orientation,
        flavor,
        index: 1,
        t_range: (-tmax, tmax),
        entries,
        ledger: Vec::new(),
    }
}

/// Coefficient of t_α in ∂_M ψ^{r−1}(b_ρ), for all (α, ρ).
fn chain_coefficients(m: &DonaldsonModel, r: u32) -> Vec<Vec<i64>> {
    let k = m.sgraph.len();
    let psi = psi_power(m, r - 1);
    let mut d = vec![vec![0i64; k]; k];
    for term in &m.differential {
        let (src, dst) = (&m.generators[term.from], &m.generators[term.to]);
        d[dst.vertex][src.vertex] += term.coeff;
    }
    (0..k).map(|a| (0..k).map(|rho| (0..k).map(|b| d[a][b] * psi[b][rho]).sum()).collect()).collect()
}

/// The differentials d^{4r} leaving every column of `page` (which must be
/// at index 4r), as maps into E_{s−4r,3}.
pub fn d4r<F: Field>(page: &Page<F>, m: &DonaldsonModel, r: u32) -> Result<Vec<Differential<F>>, FloerError> {
    if page.flavor != Flavor::Minus || page.orientation != Orientation::Bar {
        return Err(FloerError::WrongFlavor(page.flavor));
    }
    let coeff = chain_coefficients(m, r);
    let t_src = -4 * (r as i64 - 1);
    let mut out = Vec::new();
    for (&(s, t), src) in &page.entries {
        if t != t_src {
            continue;
        }
        let target = ((s - 4 * r as i64).rem_euclid(8), 3);
        let Some(dst) = page.entries.get(&target) else { continue };
        let cols: Vec<Vec<F>> = src
            .gens
            .iter()
            .map(|g| dst.gens.iter().map(|h| F::from_i64(coeff[h.vertex][g.vertex])).collect())
            .collect();
        let images: Vec<Vec<F>> = src
            .cycles
            .basis()
            .iter()
            .map(|z| {
                let mut v = vec![F::zero(); dst.gens.len()];
                for (c, zc) in cols.iter().zip(z) {
                    for (x, y) in v.iter_mut().zip(c) {
                        *x = x.clone() + zc.clone() * y;
                    }
                }
                dst.boundaries.reduce(&v)
            })
            .collect();
        let rank = Subspace::spanned(dst.gens.len(), &images).rank();
        let rows = dst.gens.len();
        let chain = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let projected: Vec<Vec<F>> = cols.iter().map(|c| dst.boundaries.reduce(c)).collect();
        out.push(Differential {
            page: 4 * r,
            source: (s, t),
            target,
            source_gens: src.gens.iter().map(|g| g.name.clone()).collect(),
            target_gens: dst.gens.iter().map(|g| g.name.clone()).collect(),
            chain,
            projected: (0..rows).map(|i| projected.iter().map(|c| c[i].clone()).collect()).collect(),
            rank,
        });
    }
    Ok(out)
}

/// Applies the differentials of `d4r(page, r)`; returns page 4r + 1.
fn step<F: Field>(page: &mut Page<F>, diffs: Vec<Differential<F>>) {
    for d in &diffs {
        let src = &page.entries[&d.source];
        let basis = src.cycles.basis();
        let rows = d.target_gens.len();
        // Image of each cycle basis vector in the target quotient.
        let images: Vec<Vec<F>> = basis
            .iter()
            .map(|z| {
                (0..rows)
                    .map(|i| z.iter().zip(&d.chain[i]).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b))
                    .collect::<Vec<F>>()
            })
            .map(|v| page.entries[&d.target].boundaries.reduce(&v))
            .collect();
        let kernel = if images.is_empty() { Vec::new() } else { SparseMat::from_columns(rows, &images).kernel() };
        let n = src.gens.len();
        let new_cycles: Vec<Vec<F>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); n];
                for (ci, z) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(z) {
                        *x = x.clone() + ci.clone() * y;
                    }
                }
                v
            })
            .collect();
        page.entries.get_mut(&d.source).unwrap().cycles = Subspace::spanned(n, &new_cycles);
        let dst = page.entries.get_mut(&d.target).unwrap();
        for v in &images {
            dst.boundaries.insert(v);
        }
    }
    page.ledger.extend(diffs);
}

/// Runs the spectral sequence to E^∞; returns it with the degeneration
/// page (1 when E¹ = E^∞).
pub fn run_to_einfty<F: Field>(m: &DonaldsonModel, flavor: Flavor) -> Result<(Page<F>, u32), FloerError> {
    let mut page = e1_page::<F>(m, flavor);
    if !page.has_odd_entries() {
        // Every differential changes total degree parity.
        return Ok((page, 1));
    }
    if m.orientation == Orientation::Std {
        return Err(FloerError::Unsupported("the std + sequence is obtained by duality".into()));
    }
    debug_assert_eq!(flavor, Flavor::Minus);
    let targets_alive = |p: &Page<F>| p.entries.iter().any(|(&(_, t), e)| t == 3 && e.dim() > 0);
    let mut last = 0;
    for r in 1..=page_bound(m) {
        page.index = 4 * r;
        let diffs = d4r(&page, m, r)?;
        if diffs.iter().any(|d| d.rank > 0) {
            last = r;
        }
        step(&mut page, diffs);
        page.index = 4 * r + 1;
        if !targets_alive(&page) {
            let degeneration = if last == 0 { 1 } else { 4 * last + 1 };
            return Ok((page, degeneration));
        }
    }
    Err(FloerError::NonDegeneration { page: page.index })
}
