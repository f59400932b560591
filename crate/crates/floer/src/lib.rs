//! The index spectral sequence of the Donaldson models, the assembly of
//! I⁺, I⁻, I^∞ as R[U]-modules, the closed-form answers, and window
//! comparisons between them.

mod assemble;
mod compare;
mod norm;
mod page;
mod subspace;
mod theorems;
mod truncated;

use equivariant::Flavor;
use thiserror::Error;

pub use assemble::{assemble, einfty_generators, ColumnGenerator};
pub use compare::{compare, default_margin, direct_invariants, CompareReport, Prediction, Window};
pub use equivariant::{Correction, Family, Periodicity, PresentedModule, Shape};
pub use norm::{norm_vanishing_and_splitting, NormReport};
pub use page::{d4r, e1_page, page_bound, run_to_einfty, Differential, E1Gen, Entry, Page};
pub use subspace::Subspace;
pub use theorems::{theorem, theorem_infinity_bar, theorem_minus_bar, theorem_minus_std, theorem_plus_bar, MinusTable, TableTerm};
pub use truncated::{truncated_ss, TruncatedSS};

#[derive(Debug, Error)]
pub enum FloerError {
    #[error("operation not defined for flavor {0}")]
    WrongFlavor(Flavor),
    #[error("spectral sequence did not degenerate by page {page}")]
    NonDegeneration { page: u32 },
    #[error("E^∞ column {column} is not free in degree {degree}: {detail}")]
    FreenessFailure { column: i64, degree: i64, detail: String },
    #[error("norm splitting fails in degree {degree}: {detail}")]
    SplittingViolation { degree: i64, detail: String },
    #[error("no vertex named {0:?}")]
    UnknownVertex(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Donaldson(#[from] donaldson::DonaldsonError),
    #[error(transparent)]
    McKay(#[from] mckay::McKayError),
}
