//! The expected labeled graphs S_Γ, encoded family by family, and a
//! comparison that reports the first disagreement.

use std::collections::{BTreeMap, BTreeSet};

use grouprep::GroupId;
use serde::{Deserialize, Serialize};

use crate::sgraph::SGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceGraph {
    pub group: GroupId,
    /// Vertex name and its grading j.
    pub vertices: Vec<(String, u8)>,
    pub edges: Vec<(String, String)>,
    /// (α, β, n_{αβ}) for α irreducible.
    pub labels: Vec<(String, String, i64)>,
}

struct Builder {
    r: ReferenceGraph,
}

impl Builder {
    fn new(group: GroupId) -> Self {
        Builder { r: ReferenceGraph { group, vertices: vec![], edges: vec![], labels: vec![] } }
    }

    fn v(&mut self, name: &str, j: u64) -> &mut Self {
        self.r.vertices.push((name.into(), (j % 8) as u8));
        self
    }

    fn e(&mut self, a: &str, b: &str) -> &mut Self {
        self.r.edges.push((a.into(), b.into()));
        self
    }

    fn n(&mut self, a: &str, b: &str, n: i64) -> &mut Self {
        self.r.labels.push((a.into(), b.into(), n));
        self
    }
}

pub fn reference_graph(g: GroupId) -> ReferenceGraph {
    let mut b = Builder::new(g);
    match g {
        GroupId::BinaryIcosahedral => {
            b.v("θ", 0).v("α", 4).v("β", 0);
            b.e("θ", "α").e("α", "β");
            b.n("α", "θ", 1).n("α", "β", 3).n("β", "α", 4);
        }
        GroupId::BinaryOctahedral => {
            b.v("θ", 0).v("α", 4).v("β", 0).v("η", 4);
            b.e("θ", "α").e("α", "β").e("β", "η");
            b.n("α", "θ", 1).n("α", "β", 3).n("β", "α", 3).n("β", "η", 1);
        }
        GroupId::BinaryTetrahedral => {
            b.v("θ", 0).v("α", 4).v("λ", 0);
            b.e("θ", "α").e("α", "λ");
            b.n("α", "θ", 1).n("α", "λ", 3);
        }
        GroupId::Cyclic(l) => {
            let l = l as u64;
            b.v("θ", 0);
            let mut prev = "θ".to_string();
            for k in 1..=(l - 1) / 2 {
                let name = format!("λ{k}");
                b.v(&name, 4 * k).e(&prev, &name);
                prev = name;
            }
            if l.is_multiple_of(2) {
                b.v("η", 4 * (l / 2)).e(&prev, "η");
            }
        }
        GroupId::BinaryDihedral(n) => {
            let n = n as u64;
            let m = n / 2;
            b.v("θ", 0);
            if n.is_multiple_of(2) {
                b.v("η1", 0).v("η2", 4 * (m + 1)).v("η3", 4 * (m + 1));
            } else {
                b.v("η", 0);
            }
            for k in 1..=m {
                b.v(&format!("α{k}"), 4 * k);
            }
            if n % 2 == 1 {
                b.v("λ", 4 * (m + 1));
            }
            let first = if n.is_multiple_of(2) { "η1" } else { "η" };
            b.e("θ", "α1").e(first, "α1").n("α1", "θ", 1).n("α1", first, 1);
            for k in 1..m {
                let (x, y) = (format!("α{k}"), format!("α{}", k + 1));
                b.e(&x, &y).n(&x, &y, 2).n(&y, &x, 2);
            }
            let last = format!("α{m}");
            if n.is_multiple_of(2) {
                b.e(&last, "η2").e(&last, "η3").n(&last, "η2", 1).n(&last, "η3", 1);
            } else {
                b.e(&last, "λ").n(&last, "λ", 2);
            }
        }
    }
    b.r
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.into(), b.into())
    } else {
        (b.into(), a.into())
    }
}

/// All disagreements between a computed S_Γ and the reference, edges
/// first; an empty result means the graphs agree exactly.
pub fn compare_with_reference(s: &SGraph, r: &ReferenceGraph) -> Vec<String> {
    let mut out = Vec::new();
    let names: BTreeSet<String> = s.vertices.iter().map(|v| v.rep.name.clone()).collect();
    let ref_names: BTreeSet<String> = r.vertices.iter().map(|v| v.0.clone()).collect();
    if names != ref_names {
        out.push(format!("vertex sets differ: computed {names:?}, expected {ref_names:?}"));
        return out;
    }
    let computed: BTreeSet<(String, String)> =
        s.edges.iter().map(|&(a, b)| key(&s.vertices[a].rep.name, &s.vertices[b].rep.name)).collect();
    let expected: BTreeSet<(String, String)> = r.edges.iter().map(|(a, b)| key(a, b)).collect();
    for e in expected.difference(&computed) {
        out.push(format!("edge {}—{} missing", e.0, e.1));
    }
    for e in computed.difference(&expected) {
        out.push(format!("unexpected edge {}—{}", e.0, e.1));
    }
    let idx = |n: &str| s.index_of(n).expect("vertex sets agree");
    let ref_labels: BTreeMap<(String, String), i64> =
        r.labels.iter().map(|(a, b, n)| ((a.clone(), b.clone()), *n)).collect();
    for &(a, b) in &r.edges.iter().map(|(a, b)| (idx(a), idx(b))).collect::<Vec<_>>() {
        for (x, y) in [(a, b), (b, a)] {
            let (xn, yn) = (&s.vertices[x].rep.name, &s.vertices[y].rep.name);
            let want = ref_labels.get(&(xn.clone(), yn.clone())).copied().unwrap_or(0);
            let got = s.label(x, y);
            if want != got {
                out.push(format!("edge {xn}—{yn}: label n({xn},{yn}) = {got}, expected {want}"));
            }
        }
    }
    for (name, j) in &r.vertices {
        let got = s.vertices[idx(name)].j;
        if got != *j {
            out.push(format!("vertex {name}: j = {got}, expected {j}"));
        }
    }
    out
}
