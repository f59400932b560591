//! McKay graphs, their quotients, the representation-ring equation
//! (2 − Q)𝓗 = α − β, and the labeled graphs S_Γ with their gradings.

mod graph;
pub mod reference;
mod sgraph;
mod solve;

pub use graph::{mckay_graph, quotient_graph, recognize_dynkin, recognize_subgroup, Dynkin, McKayGraph, QuotientGraph};
pub use grouprep::VirtualRep;
pub use reference::{compare_with_reference, reference_graph, ReferenceGraph};
pub use sgraph::{parse_dot, s_graph, DotGraph, SGraph, SVertex};
pub use solve::{apply_two_minus_q, graphical_solution, solve_rep_equation, EdgeSolution};

use grouprep::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McKayError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("McKay graph has unexpected shape: {0}")]
    GraphShapeError(String),
    #[error("representation equation has no solution: {0}")]
    Unsolvable(String),
    #[error("not a simply-laced Dynkin diagram: {0}")]
    NotDynkin(String),
    #[error("edge label mismatch: {0}")]
    LabelMismatch(String),
}

/// Edge solution for the pair (α, β) of quaternionic representations of `g`:
/// 𝓗 with (2 − Q)𝓗 = α − β and the subgroup Γ′ attached to its support.
pub fn edge_solution(g: grouprep::GroupId, alpha: &VirtualRep, beta: &VirtualRep) -> Result<EdgeSolution, McKayError> {
    let m = mckay_graph(g)?;
    solve::edge_solution(&m, alpha, beta)
}
