//! The consistency-checking solution: one window automaton per distinct
//! local map in the equivalence class at the minimum firing time.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::machine::WindowAutomaton;
use super::SimOutcome;
use crate::error::Error;
use crate::grid::{Config, PathConfig};
use crate::mft::{equivalence_class, mft_localmap, window, Limits};
use crate::variation::Variation;

/// Nodes p_z with a' <= z <= b' hear both floods of the window (a, b) by time T.
pub fn firing_interval(a: i32, b: i32, t: u32, r: i32, s: i32) -> (i32, i32) {
    let t = t as i32;
    (r.max(-t + 2 * b), s.min(t + 2 * a))
}

/// Indices of intervals covering [r, s], each pick reaching furthest right
/// from the first uncovered index; ties go to the earliest interval.
pub fn greedy_cover(intervals: &[(i32, i32)], r: i32, s: i32) -> Result<Vec<usize>, Error> {
    let mut picks = Vec::new();
    let mut next = r;
    while next <= s {
        let best = intervals.iter().enumerate().filter(|(_, &(lo, hi))| lo <= next && hi >= next).fold(
            None,
            |acc: Option<(usize, i32)>, (k, &(_, hi))| match acc {
                Some((_, h)) if h >= hi => acc,
                _ => Some((k, hi)),
            },
        );
        let Some((k, hi)) = best else {
            return Err(Error::Internal(format!("index {next} is not covered")));
        };
        picks.push(k);
        next = hi + 1;
    }
    Ok(picks)
}

/// One row of the per-member table: the automaton for window (a, b) of C_k.
#[derive(Debug, Clone)]
pub struct CcAutomaton {
    pub member: usize,
    pub a: i32,
    pub b: i32,
    pub interval: (i32, i32),
    pub selected: bool,
}

#[derive(Debug, Clone)]
pub struct CcSpec {
    pub t: u32,
    pub class: Vec<PathConfig>,
    pub rows: Vec<CcAutomaton>,
    /// Distinct automata among the selected rows.
    pub automata: Vec<WindowAutomaton>,
    /// 4^n (T + 2) with n distinct automata.
    pub state_count: BigUint,
}

pub fn build_cc(c: &Config, gamma: Variation, limits: &Limits) -> Result<CcSpec, Error> {
    if !gamma.is_path_shaped() {
        return Err(Error::Unsupported(format!("no consistency-checking solution for {gamma}")));
    }
    let t = mft_localmap(c, gamma, limits)?.value;
    let class: Vec<PathConfig> = equivalence_class(c, t, gamma, limits)?
        .into_iter()
        .map(|d| d.as_path().cloned().expect("path variation"))
        .collect();
    let mut rows = Vec::new();
    let mut automata = BTreeSet::new();
    for (k, ck) in class.iter().enumerate() {
        let (r, s) = (ck.r(), ck.s());
        let mut seen = BTreeSet::new();
        let first = rows.len();
        for u in r..=s {
            let (a, b) = window(u, t, r, s)?;
            if seen.insert((a, b)) {
                rows.push(CcAutomaton { member: k, a, b, interval: firing_interval(a, b, t, r, s), selected: false });
            }
        }
        let intervals: Vec<(i32, i32)> = rows[first..].iter().map(|row| row.interval).collect();
        for pick in greedy_cover(&intervals, r, s)? {
            let row = &mut rows[first + pick];
            row.selected = true;
            automata.insert(WindowAutomaton::new(ck, row.a, row.b, t));
        }
    }
    let automata: Vec<WindowAutomaton> = automata.into_iter().collect();
    let state_count = BigUint::from(4u32).pow(automata.len() as u32) * BigUint::from(t + 2);
    Ok(CcSpec { t, class, rows, automata, state_count })
}

/// Runs every automaton on `c`; a node fires when any of them fires it.
pub fn simulate_cc(spec: &CcSpec, c: &PathConfig) -> SimOutcome {
    let mut times = vec![None; c.len()];
    for m in &spec.automata {
        for (slot, t) in times.iter_mut().zip(m.run(c)) {
            if t.is_some() {
                *slot = t;
            }
        }
    }
    SimOutcome { nodes: c.cells().iter().copied().zip(times).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals() {
        assert_eq!(firing_interval(-11, 9, 30, -11, 11), (-11, 8));
        assert_eq!(firing_interval(-9, 11, 30, -11, 11), (-8, 11));
        assert_eq!(firing_interval(-12, 9, 30, -12, 10), (-12, 6));
    }

    #[test]
    fn cover() {
        let rows = [(-11, 8), (-10, 8), (-8, 8), (-8, 10), (-8, 11)];
        assert_eq!(greedy_cover(&rows, -11, 11).unwrap(), vec![0, 4]);
        assert_eq!(greedy_cover(&[(0, 5)], 0, 5).unwrap(), vec![0]);
        assert_eq!(greedy_cover(&[(1, 2), (0, 5), (2, 3)], 0, 5).unwrap(), vec![1]);
        assert!(greedy_cover(&[(0, 1), (3, 5)], 0, 5).is_err());
    }

    #[test]
    fn singleton() {
        let c = Config::Path(PathConfig::singleton());
        let spec = build_cc(&c, Variation::GTwoPath, &Limits::default()).unwrap();
        assert_eq!((spec.t, spec.class.len(), spec.automata.len()), (0, 1, 1));
        assert_eq!(spec.state_count, BigUint::from(8u32));
        assert_eq!(simulate_cc(&spec, &PathConfig::singleton()).fire_time(), Some(0));
    }

    #[test]
    fn line_class() {
        let c = Config::Path(PathConfig::line(3, 3));
        let spec = build_cc(&c, Variation::LineAb, &Limits::default()).unwrap();
        assert_eq!(spec.t, 9);
        for ck in &spec.class {
            assert_eq!(simulate_cc(&spec, ck).fire_time(), Some(9));
        }
        assert!(simulate_cc(&spec, &PathConfig::line(5, 5)).never_fires());
    }

    #[test]
    fn regions_unsupported() {
        let c = crate::grid::parse_config("REG (0,0)").unwrap();
        assert!(matches!(build_cc(&c, Variation::TwoReg, &Limits::default()), Err(Error::Unsupported(_))));
    }
}
