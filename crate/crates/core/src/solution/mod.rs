//! Partial solutions: construction, simulation, and state counts.

use std::fmt;

use crate::grid::Position;

pub mod bounds;
pub mod cc;
pub mod lm;
pub mod machine;
pub mod reflection;

pub use bounds::{
    cc_worst_case_exponent, format_big, mss_upper, state_bounds, MssBound, StateBoundKind, PATH_WRAPPER, REGION_WRAPPER,
};
pub use cc::{build_cc, firing_interval, greedy_cover, simulate_cc, CcAutomaton, CcSpec};
pub use lm::simulate_lm;
pub use machine::WindowAutomaton;
pub use reflection::{build_reflection, simulate_reflection, ReflectionSpec};

/// Fire time of every node of a simulated configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimOutcome {
    pub nodes: Vec<(Position, Option<u32>)>,
}

impl SimOutcome {
    /// The common fire time when every node fires together.
    pub fn fire_time(&self) -> Option<u32> {
        let first = self.nodes.first()?.1?;
        self.nodes.iter().all(|&(_, t)| t == Some(first)).then_some(first)
    }

    pub fn fired(&self) -> bool {
        self.fire_time().is_some()
    }

    pub fn never_fires(&self) -> bool {
        self.nodes.iter().all(|(_, t)| t.is_none())
    }
}

impl fmt::Display for SimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = self.fire_time() {
            write!(f, "FIRES {t}")
        } else if self.never_fires() {
            f.write_str("NEVER_FIRES")
        } else {
            let fired = self.nodes.iter().filter(|(_, t)| t.is_some()).count();
            write!(f, "PARTIAL {fired}/{}", self.nodes.len())
        }
    }
}
