//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::path::Path;
use std::str::FromStr;

use donaldson::Orientation;
use equivariant::Flavor;
use grouprep::GroupId;
use serde::{Deserialize, Serialize};

use crate::{CliError, Coeff};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "SFLOER_CONFIG";

/// The group set `verify` runs on by default.
pub const DEFAULT_GROUPS: &str = "T*,O*,I*,C2..C8,D*2..D*7";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(CliError::Usage(format!("format {s:?}: expected text, json or dot"))),
        }
    }
}

/// Every setting as it may appear in a config file or on the command line;
/// unset fields fall through to the layer below.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub groups: Option<String>,
    pub orientation: Option<String>,
    /// Comma-separated, e.g. "+,-,inf".
    pub flavors: Option<String>,
    pub coeff: Option<String>,
    /// Filtration levels "q:p".
    pub window: Option<String>,
    /// Degrees "lo:hi".
    pub degrees: Option<String>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub kmax: Option<u32>,
    pub timings: Option<bool>,
    pub verbosity: Option<u8>,
    pub fixtures: Option<Vec<String>>,
}

impl Overrides {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// `self` on top of `below`.
    pub fn over(self, below: Overrides) -> Overrides {
        Overrides {
            groups: self.groups.or(below.groups),
            orientation: self.orientation.or(below.orientation),
            flavors: self.flavors.or(below.flavors),
            coeff: self.coeff.or(below.coeff),
            window: self.window.or(below.window),
            degrees: self.degrees.or(below.degrees),
            format: self.format.or(below.format),
            jobs: self.jobs.or(below.jobs),
            kmax: self.kmax.or(below.kmax),
            timings: self.timings.or(below.timings),
            verbosity: self.verbosity.or(below.verbosity),
            fixtures: self.fixtures.or(below.fixtures),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(with = "by_name")]
    pub groups: Vec<GroupId>,
    /// None means both orientations.
    #[serde(with = "by_name::optional")]
    pub orientation: Option<Orientation>,
    #[serde(with = "by_name")]
    pub flavors: Vec<Flavor>,
    pub coeff: Coeff,
    /// Filtration levels (q, p]; None picks a margin around the degrees.
    pub window: Option<(i64, i64)>,
    pub degrees: (i64, i64),
    pub format: Format,
    pub jobs: usize,
    pub kmax: u32,
    pub timings: bool,
    pub verbosity: u8,
    pub fixtures: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(Overrides::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> Result<Self, CliError> {
        let orientation = match o.orientation.as_deref() {
            None | Some("both") => None,
            Some(s) => Some(s.parse::<Orientation>().map_err(|e| CliError::Usage(e.to_string()))?),
        };
        let flavors = match o.flavors.as_deref() {
            None | Some("all") => Flavor::ALL.to_vec(),
            Some(s) => s.split(',').map(|f| f.trim().parse::<Flavor>().map_err(CliError::Usage)).collect::<Result<_, _>>()?,
        };
        let degrees = match o.degrees.as_deref() {
            Some(s) => parse_range(s, "degrees")?,
            None => (0, 47),
        };
        let window = o.window.as_deref().map(|s| parse_range(s, "window")).transpose()?;
        if let Some((q, p)) = window {
            if p <= q {
                return Err(CliError::Usage(format!("window {q}:{p} must have positive width")));
            }
        }
        if degrees.1 < degrees.0 {
            return Err(CliError::Usage(format!("degrees {}:{} must have lo ≤ hi", degrees.0, degrees.1)));
        }
        let jobs = o.jobs.unwrap_or(1);
        if jobs == 0 {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            groups: parse_groups(o.groups.as_deref().unwrap_or(DEFAULT_GROUPS))?,
            orientation,
            flavors,
            coeff: o.coeff.as_deref().unwrap_or("q").parse()?,
            window,
            degrees,
            format: o.format.as_deref().unwrap_or("text").parse()?,
            jobs,
            kmax: o.kmax.unwrap_or(6),
            timings: o.timings.unwrap_or(false),
            verbosity: o.verbosity.unwrap_or(0),
            fixtures: o.fixtures.unwrap_or_default(),
        })
    }

    pub fn orientations(&self) -> Vec<Orientation> {
        self.orientation.map_or(vec![Orientation::Bar, Orientation::Std], |o| vec![o])
    }
}

/// Lists serialized through their display names ("T*", "+").
mod by_name {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error>
    where
        T::Err: Display,
    {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }

    pub mod optional {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => s.serialize_some(&x.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error>
        where
            T::Err: Display,
        {
            Option::<String>::deserialize(d)?.map(|x| x.parse().map_err(D::Error::custom)).transpose()
        }
    }
}

/// "a:b" as a pair of integers.
pub fn parse_range(s: &str, what: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("{what} {s:?}: expected a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn usage(e: grouprep::GroupError) -> CliError {
    CliError::Usage(e.to_string())
}

/// A group selector: comma-separated names ("T*", "D*5"), ranges within
/// one family ("C2..C8"), "all" (parameters ≤ 12), "all:N", or
/// "order<=N". Duplicates are dropped, first occurrence wins.
pub fn parse_groups(s: &str) -> Result<Vec<GroupId>, CliError> {
    let mut out: Vec<GroupId> = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let found: Vec<GroupId> = if item == "all" {
            GroupId::sweep(12)
        } else if let Some(n) = item.strip_prefix("all:") {
            GroupId::sweep(n.parse().map_err(|_| CliError::Usage(format!("group selector {item:?}")))?)
        } else if let Some(n) = item.strip_prefix("order<=") {
            let n: u64 = n.parse().map_err(|_| CliError::Usage(format!("group selector {item:?}")))?;
            let mut v: Vec<GroupId> = (1..=n as u32).map(GroupId::Cyclic).collect();
            v.extend((2..).map(GroupId::BinaryDihedral).take_while(|g| g.order() <= n));
            v.extend([GroupId::BinaryTetrahedral, GroupId::BinaryOctahedral, GroupId::BinaryIcosahedral].into_iter().filter(|g| g.order() <= n));
            v
        } else if let Some((a, b)) = item.split_once("..") {
            let (a, b): (GroupId, GroupId) = (a.parse().map_err(usage)?, b.parse().map_err(usage)?);
            match (a, b) {
                (GroupId::Cyclic(x), GroupId::Cyclic(y)) => (x..=y).map(GroupId::Cyclic).collect(),
                (GroupId::BinaryDihedral(x), GroupId::BinaryDihedral(y)) => (x..=y).map(GroupId::BinaryDihedral).collect(),
                _ => return Err(CliError::Usage(format!("range {item:?} must stay within the cyclic or dihedral family"))),
            }
        } else {
            vec![item.parse().map_err(usage)?]
        };
        for g in found {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("group selector {s:?} selects nothing")));
    }
    Ok(out)
}
