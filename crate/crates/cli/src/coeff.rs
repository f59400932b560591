use std::fmt;
use std::str::FromStr;

use exactmath::is_prime;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Odd primes with a compiled field instance.
pub const SUPPORTED_PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Coefficient field: Q or F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q,
    Fp(u64),
}

impl FromStr for Coeff {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(Coeff::Q);
        }
        let Some(p) = t.strip_prefix("fp:") else {
            return Err(CliError::Usage(format!("coefficient {s:?}: expected q or fp:<odd prime>")));
        };
        let p: u64 = p.parse().map_err(|_| CliError::Usage(format!("coefficient {s:?}: not a number")))?;
        if p.is_multiple_of(2) {
            return Err(CliError::Usage(format!("fp:{p}: the prime must be odd")));
        }
        if !is_prime(p) {
            return Err(CliError::Usage(format!("fp:{p}: {p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(CliError::Usage(format!("fp:{p}: supported primes are {SUPPORTED_PRIMES:?}")));
        }
        Ok(Coeff::Fp(p))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q => write!(f, "q"),
            Coeff::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Runs `$body` with the type alias `$F` bound to the field of `$coeff`.
#[macro_export]
macro_rules! with_field {
    ($coeff:expr, $F:ident => $body:expr) => {
        match $coeff {
            $crate::Coeff::Q => {
                type $F = exactmath::Q;
                $body
            }
            $crate::Coeff::Fp(p) => $crate::with_field!(@fp p, $F => $body; 3 5 7 11 13 17 19 23 29 31 37 41 43 47),
        }
    };
    (@fp $p:ident, $F:ident => $body:expr; $($prime:literal)*) => {
        match $p {
            $($prime => {
                type $F = exactmath::Fp<$prime>;
                $body
            })*
            other => panic!("fp:{other} is not a supported prime"),
        }
    };
}
