use std::collections::BTreeSet;

use crate::error::Error;
use crate::grid::{distances_from, BoundaryCondition, Config, Position};

/// What node `v` can know at time `t`: nothing (quiescent) or the local map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AvailableInfo {
    Quiescent,
    Known { t: u32, v: Position, x: BTreeSet<(Position, BoundaryCondition)> },
}

impl AvailableInfo {
    pub fn is_quiescent(&self) -> bool {
        matches!(self, AvailableInfo::Quiescent)
    }

    /// Cells of the local map.
    pub fn cells(&self) -> Vec<Position> {
        match self {
            AvailableInfo::Quiescent => Vec::new(),
            AvailableInfo::Known { x, .. } => x.iter().map(|&(p, _)| p).collect(),
        }
    }
}

pub fn available_info(c: &Config, v: Position, t: u32) -> Result<AvailableInfo, Error> {
    let from_origin = distances_from(c, Position::ORIGIN)?;
    let from_v = distances_from(c, v)?;
    if from_origin[&v] > t {
        return Ok(AvailableInfo::Quiescent);
    }
    let x = from_origin
        .iter()
        .filter(|&(p, &d)| d + from_v[p] <= t)
        .map(|(&p, _)| (p, BoundaryCondition::of(p, |q| c.contains(q))))
        .collect();
    Ok(AvailableInfo::Known { t, v, x })
}

/// Indices (a, b) with M(p_u, t, C) = p_a..p_b for a path with hands r, s.
pub fn window(u: i32, t: u32, r: i32, s: i32) -> Result<(i32, i32), Error> {
    let t = t as i32;
    if u.abs() > t {
        return Err(Error::Precondition(format!("|u| = {} exceeds t = {t}", u.abs())));
    }
    let a = r.max((u - t).div_euclid(2) + ((u - t).rem_euclid(2) != 0) as i32);
    let b = s.min((u + t).div_euclid(2));
    Ok((a, b))
}
