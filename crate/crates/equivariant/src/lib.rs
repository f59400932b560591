//! Equivariant chains over A = Λ[u] on finite Donaldson windows: the
//! double-complex models of C⁺, C⁻, C^∞, the norm map and its cone, a
//! literal bar-construction oracle, and orbit homology in closed form.

mod functor;
pub mod module;
mod norm;
mod oracle;
mod orbit;
mod triangle;
mod ucomplex;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use functor::{functor_model, FunctorModel};
pub use module::{Correction, Family, Periodicity, PresentedModule, Shape};
pub use norm::{norm_data, NormData};
pub use oracle::{bar_oracle, OracleReport};
pub use orbit::{orbit_complex, orbit_family, orbit_homology};
pub use triangle::{exact_triangle_check, triangle_from, u_sequence_check, TriangleReport, TriangleRow};
pub use ucomplex::{Homology, ModuleInvariants, UComplex};

#[derive(Debug, Error)]
pub enum EquivariantError {
    #[error("bar oracle ({flavor}) disagrees at generator {generator} in the {square} square")]
    OracleMismatch { flavor: Flavor, generator: String, square: String },
    #[error("exact triangle fails in degree {degree}: {detail}")]
    TriangleViolation { degree: i64, detail: String },
    #[error("operation not defined for flavor {0}")]
    WrongFlavor(Flavor),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    Plus,
    Minus,
    Infinity,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Plus, Flavor::Minus, Flavor::Infinity];

    /// Whether column c of the double complex belongs to this flavor.
    pub fn has_column(self, c: i64) -> bool {
        match self {
            Flavor::Plus => c >= 0,
            Flavor::Minus => c <= 0,
            Flavor::Infinity => true,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Plus => "+",
            Flavor::Minus => "-",
            Flavor::Infinity => "inf",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Flavor::Plus),
            "-" | "minus" => Ok(Flavor::Minus),
            "inf" | "infinity" | "∞" => Ok(Flavor::Infinity),
            _ => Err(format!("unknown flavor {s:?} (expected +, - or inf)")),
        }
    }
}
