use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan family of the compact group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `Sp(2n)`, type C.
    #[serde(rename = "sp")]
    Sp,
    /// `SO(2n)`, type D.
    #[serde(rename = "so-even")]
    SoEven,
    /// `SO(2n+1)`, type B.
    #[serde(rename = "so-odd")]
    SoOdd,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Sp, Family::SoEven, Family::SoOdd];

    /// `ε`: 1 for the symplectic family, 0 for the orthogonal ones.
    pub fn epsilon(self) -> u32 {
        match self {
            Family::Sp => 1,
            Family::SoEven | Family::SoOdd => 0,
        }
    }

    /// Matrix size `m` at rank `n`.
    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            Family::Sp | Family::SoEven => 2 * n,
            Family::SoOdd => 2 * n + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::SoEven => "so-even",
            Family::SoOdd => "so-odd",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sp" | "c" | "symplectic" => Ok(Family::Sp),
            "so-even" | "soeven" | "so2n" | "d" => Ok(Family::SoEven),
            "so-odd" | "soodd" | "so2n+1" | "b" => Ok(Family::SoOdd),
            other => Err(Error::Parse(format!(
                "unknown group family {other:?} (expected sp, so-even or so-odd)"
            ))),
        }
    }
}

/// Rank `n`, or the stable range (every weight that appears is `<= n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(usize),
    Stable,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Stable => f.write_str("stable"),
        }
    }
}

impl FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("stable") {
            return Ok(Rank::Stable);
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Rank::Finite(n)),
            _ => Err(Error::Parse(format!("rank must be a positive integer or \"stable\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub rank: Rank,
}

impl GroupSpec {
    pub fn new(family: Family, rank: Rank) -> Self {
        GroupSpec { family, rank }
    }

    pub fn stable(family: Family) -> Self {
        GroupSpec::new(family, Rank::Stable)
    }

    pub fn finite(family: Family, n: usize) -> Self {
        GroupSpec::new(family, Rank::Finite(n))
    }

    pub fn epsilon(&self) -> u32 {
        self.family.epsilon()
    }

    /// `n`, if finite.
    pub fn n(&self) -> Option<usize> {
        match self.rank {
            Rank::Finite(n) => Some(n),
            Rank::Stable => None,
        }
    }

    /// Matrix size `m`, if the rank is finite.
    pub fn matrix_size(&self) -> Option<usize> {
        self.n().map(|n| self.family.matrix_size(n))
    }

    /// Whether weight-`k` formulas hold verbatim (`n >= k`).
    pub fn in_stable_range(&self, k: usize) -> bool {
        match self.rank {
            Rank::Stable => true,
            Rank::Finite(n) => n >= k,
        }
    }

    pub(crate) fn require_stable(&self, k: usize) -> Result<()> {
        match self.rank {
            Rank::Finite(n) if n < k => Err(Error::OutOfStableRange { weight: k, rank: n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.rank) {
            (Family::Sp, Rank::Finite(n)) => write!(f, "Sp({})", 2 * n),
            (Family::SoEven, Rank::Finite(n)) => write!(f, "SO({})", 2 * n),
            (Family::SoOdd, Rank::Finite(n)) => write!(f, "SO({})", 2 * n + 1),
            (Family::Sp, Rank::Stable) => f.write_str("Sp(2n), n stable"),
            (Family::SoEven, Rank::Stable) => f.write_str("SO(2n), n stable"),
            (Family::SoOdd, Rank::Stable) => f.write_str("SO(2n+1), n stable"),
        }
    }
}
