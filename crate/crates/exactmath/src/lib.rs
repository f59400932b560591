//! Exact scalars, cyclotomic numbers and sparse linear algebra.

mod cyclo;
mod field;
mod sparse;

pub use cyclo::{cyclo_inner, cyclotomic_poly, Cyclo};
pub use field::{is_prime, rat, rat_to_i64, Field, Fp};
pub use sparse::{span_basis, span_rank, PivotRule, RankKernelImage, SparseMat};

pub use num_rational::BigRational;

/// The rationals.
pub type Q = BigRational;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("cyclotomic value is not rational: {0}")]
    NonRationalResult(String),
}
