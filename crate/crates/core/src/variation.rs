//! Configuration universes the searches quantify over.

use std::fmt;
use std::str::FromStr;

use crate::grid::{radius, Config, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variation {
    /// Paths with the general at an end.
    TwoPath,
    /// All valid paths.
    GTwoPath,
    /// Horizontal lines p_{-a}..p_b with 0 <= a <= b <= a+2.
    LineAb,
    /// Connected regions.
    TwoReg,
}

impl Variation {
    pub fn member(self, c: &Config) -> bool {
        match (self, c) {
            (Variation::TwoReg, Config::Region(_)) => true,
            (Variation::GTwoPath, Config::Path(_)) => true,
            (Variation::TwoPath, Config::Path(p)) => p.r() == 0 || p.s() == 0,
            (Variation::LineAb, Config::Path(_)) => line_ab(c).is_some(),
            _ => false,
        }
    }

    pub fn is_path_shaped(self) -> bool {
        self != Variation::TwoReg
    }

    /// An upper bound on the minimum firing time of any member.
    pub fn firing_upper_bound(self, c: &Config) -> u32 {
        match c {
            Config::Path(p) => {
                let (a, b) = (-p.r() as u32, p.s() as u32);
                a + b + a.max(b)
            }
            Config::Region(_) => 3 * radius(c) + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variation::TwoPath => "2path",
            Variation::GTwoPath => "g2path",
            Variation::LineAb => "line-ab",
            Variation::TwoReg => "2reg",
        }
    }
}

/// (a, b) when `c` is the horizontal line from -a to b with a <= b <= a+2.
pub fn line_ab(c: &Config) -> Option<(u32, u32)> {
    let cells = c.positions();
    if cells.iter().any(|p| p.y != 0) {
        return None;
    }
    let a = -cells.iter().map(|p| p.x).min()?;
    let b = cells.iter().map(|p| p.x).max()?;
    if cells.len() as i32 != a + b + 1 || !c.contains(Position::ORIGIN) {
        return None;
    }
    (a <= b && b <= a + 2).then_some((a as u32, b as u32))
}

impl fmt::Display for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2path" => Ok(Variation::TwoPath),
            "g2path" => Ok(Variation::GTwoPath),
            "line-ab" => Ok(Variation::LineAb),
            "2reg" => Ok(Variation::TwoReg),
            _ => Err(format!("unknown variation `{s}`")),
        }
    }
}
