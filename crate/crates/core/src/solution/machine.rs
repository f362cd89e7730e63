//! Window-checking automaton shared by the reflection and consistency-checking
//! solutions.
//!
//! Two probes leave the general at time 0, one toward each end of a window
//! p_a..p_b, comparing every cell they visit with the source configuration.
//! A probe that finds a mismatch or runs off the path disappears. When a probe
//! arrives at its end of the window it starts a flood that moves one node per
//! step. At the horizon every node that has seen both floods fires.

use std::fmt;

use crate::grid::{BoundaryCondition, PathConfig, Position};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowAutomaton {
    pub a: i32,
    pub b: i32,
    /// p_a..p_b of the source configuration with their boundary conditions.
    pub cells: Vec<(Position, BoundaryCondition)>,
    pub horizon: u32,
}

impl WindowAutomaton {
    pub fn new(c: &PathConfig, a: i32, b: i32, horizon: u32) -> Self {
        assert!(c.r() <= a && a <= 0 && 0 <= b && b <= c.s(), "window outside the configuration");
        let cells = (a..=b).map(|k| (c.p(k), c.bc(c.p(k)))).collect();
        WindowAutomaton { a, b, cells, horizon }
    }

    fn expected(&self, k: i32) -> (Position, BoundaryCondition) {
        self.cells[(k - self.a) as usize]
    }

    /// Whether the probe visiting index k of `c` sees what it expects.
    fn matches(&self, c: &PathConfig, k: i32) -> bool {
        if k < c.r() || k > c.s() {
            return false;
        }
        let p = c.p(k);
        (p, c.bc(p)) == self.expected(k)
    }

    /// Fire time of every node of `c`, indexed from r.
    pub fn run(&self, c: &PathConfig) -> Vec<Option<u32>> {
        let (r, s) = (c.r(), c.s());
        let n = c.len();
        let mut left_probe = true;
        let mut right_probe = true;
        // flood fronts as index ranges
        let mut left_flood: Option<(i32, i32)> = None;
        let mut right_flood: Option<(i32, i32)> = None;
        let grow = |f: Option<(i32, i32)>| f.map(|(lo, hi)| ((lo - 1).max(r), (hi + 1).min(s)));
        for t in 0..=self.horizon as i32 {
            left_flood = grow(left_flood);
            right_flood = grow(right_flood);
            if left_probe && t <= -self.a {
                left_probe = self.matches(c, -t);
                if left_probe && -t == self.a {
                    left_flood = Some((self.a, self.a));
                }
            }
            if right_probe && t <= self.b {
                right_probe = self.matches(c, t);
                if right_probe && t == self.b {
                    right_flood = Some((self.b, self.b));
                }
            }
        }
        let seen = |f: Option<(i32, i32)>, k: i32| f.is_some_and(|(lo, hi)| lo <= k && k <= hi);
        (0..n as i32)
            .map(|off| {
                let k = r + off;
                (seen(left_flood, k) && seen(right_flood, k)).then_some(self.horizon)
            })
            .collect()
    }
}

impl fmt::Display for WindowAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = self.cells.first().unwrap();
        let last = self.cells.last().unwrap();
        write!(f, "A({}, {}) T={} ends {}{} {}{}", self.a, self.b, self.horizon, first.0, first.1, last.0, last.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fires_at_horizon() {
        let c = PathConfig::line(3, 3);
        let m = WindowAutomaton::new(&c, -3, 3, 9);
        assert!(m.run(&c).iter().all(|&t| t == Some(9)));
        // too early a horizon leaves the far ends unreached
        let early = WindowAutomaton::new(&c, -3, 3, 8);
        assert_eq!(early.run(&c)[0], None);
    }

    #[test]
    fn mismatch_silences_everything() {
        let c = PathConfig::line(3, 3);
        let m = WindowAutomaton::new(&c, -3, 3, 9);
        let other = PathConfig::line(3, 4);
        assert!(m.run(&other).iter().all(Option::is_none));
    }
}
