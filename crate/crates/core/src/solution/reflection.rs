//! The reflection solution built from a minimizing window of h.

use std::collections::BTreeMap;

use super::machine::WindowAutomaton;
use super::SimOutcome;
use crate::extension::{combine, enumerate_left_extensions, enumerate_right_extensions, fg_table, Extension, Window};
use crate::grid::PathConfig;
use crate::mft::t_tilde_from_table;

#[derive(Debug, Clone)]
pub struct ReflectionSpec {
    pub i0: i32,
    pub j0: i32,
    pub t_tilde: u32,
    pub automaton: WindowAutomaton,
    pub state_count_bound: u32,
    source: PathConfig,
}

pub fn build_reflection(c: &PathConfig) -> ReflectionSpec {
    let (t_tilde, windows) = t_tilde_from_table(&fg_table(c));
    let Window { i: i0, j: j0 } = windows[0];
    let state_count_bound = if c.r() == 0 || c.s() == 0 { t_tilde + 2 } else { 4 * t_tilde + 8 };
    ReflectionSpec {
        i0,
        j0,
        t_tilde,
        automaton: WindowAutomaton::new(c, i0, j0, t_tilde),
        state_count_bound,
        source: c.clone(),
    }
}

impl ReflectionSpec {
    /// Is `c` a consistent extension of p_{i0}..p_{j0}?
    pub fn in_domain(&self, c: &PathConfig) -> bool {
        let w = &self.automaton;
        c.r() <= w.a
            && w.b <= c.s()
            && (w.a..=w.b).all(|k| {
                let (p, bc) = w.cells[(k - w.a) as usize];
                c.p(k) == p && c.bc(p) == bc
            })
    }

    /// Every consistent extension of the window; finite since h(i0, j0) is.
    pub fn domain(&self) -> Vec<PathConfig> {
        let c = &self.source;
        let w = Window::new(self.i0, self.j0);
        let side = |list: Vec<Extension>, fixed: bool| if fixed { vec![Extension { cells: Vec::new() }] } else { list };
        let lefts = side(enumerate_left_extensions(c, w, 0).extensions, w.i == c.r());
        let rights = side(enumerate_right_extensions(c, w, 0).extensions, w.j == c.s());
        let mut out = BTreeMap::new();
        for x0 in &lefts {
            for x1 in &rights {
                if let Some(d) = combine(c, w, x0, x1) {
                    out.insert(d.to_string(), d);
                }
            }
        }
        out.into_values().collect()
    }
}

pub fn simulate_reflection(spec: &ReflectionSpec, c: &PathConfig) -> SimOutcome {
    let times = spec.automaton.run(c);
    SimOutcome { nodes: c.cells().iter().copied().zip(times).collect() }
}
