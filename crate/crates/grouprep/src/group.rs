use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::GroupError;

/// A finite subgroup of SU(2), up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    /// C_l, l >= 1.
    Cyclic(u32),
    /// D*_n, n >= 2, order 4n.
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

use GroupId::*;

impl GroupId {
    pub fn cyclic(l: u32) -> Result<Self, GroupError> {
        if l == 0 {
            return Err(GroupError::InvalidGroup("C_l needs l >= 1".into()));
        }
        Ok(Cyclic(l))
    }

    pub fn binary_dihedral(n: u32) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidGroup("D*_n needs n >= 2".into()));
        }
        Ok(BinaryDihedral(n))
    }

    pub fn order(self) -> u64 {
        match self {
            Cyclic(l) => l as u64,
            BinaryDihedral(n) => 4 * n as u64,
            BinaryTetrahedral => 24,
            BinaryOctahedral => 48,
            BinaryIcosahedral => 120,
        }
    }

    /// Order N of the root of unity generating all character values.
    pub fn cyclotomic_order(self) -> usize {
        match self {
            Cyclic(l) => 2 * l as usize,
            BinaryDihedral(n) => 4 * n as usize,
            BinaryTetrahedral => 24,
            BinaryOctahedral => 48,
            BinaryIcosahedral => 120,
        }
    }

    /// Invariant factors of the abelianization; empty for a perfect group.
    pub fn abelianization(self) -> Vec<u64> {
        match self {
            Cyclic(1) => vec![],
            Cyclic(l) => vec![l as u64],
            BinaryDihedral(n) if n % 2 == 1 => vec![4],
            BinaryDihedral(_) => vec![2, 2],
            BinaryTetrahedral => vec![3],
            BinaryOctahedral => vec![2],
            BinaryIcosahedral => vec![],
        }
    }

    /// Family parameter (l or n), if any.
    pub fn parameter(self) -> Option<u32> {
        match self {
            Cyclic(l) | BinaryDihedral(l) => Some(l),
            _ => None,
        }
    }

    /// C_2..=C_m, D*_2..=D*_m, then T*, O*, I*.
    pub fn sweep(max_param: u32) -> Vec<GroupId> {
        let mut v: Vec<GroupId> = (2..=max_param).map(Cyclic).collect();
        v.extend((2..=max_param).map(BinaryDihedral));
        v.extend([BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral]);
        v
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cyclic(l) => write!(f, "C{l}"),
            BinaryDihedral(n) => write!(f, "D*{n}"),
            BinaryTetrahedral => write!(f, "T*"),
            BinaryOctahedral => write!(f, "O*"),
            BinaryIcosahedral => write!(f, "I*"),
        }
    }
}

impl FromStr for GroupId {
    type Err = GroupError;

    /// Accepts `C5`, `D*4` (or `D4`), `T*`, `O*`, `I*` (star optional),
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let t = s.trim().to_ascii_uppercase().replace('_', "");
        let bad = || GroupError::InvalidGroup(format!("unrecognized group '{s}'"));
        match t.as_str() {
            "T" | "T*" => return Ok(BinaryTetrahedral),
            "O" | "O*" => return Ok(BinaryOctahedral),
            "I" | "I*" => return Ok(BinaryIcosahedral),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix('C') {
            return GroupId::cyclic(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = t.strip_prefix('D') {
            let rest = rest.trim_start_matches('*');
            return GroupId::binary_dihedral(rest.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}
