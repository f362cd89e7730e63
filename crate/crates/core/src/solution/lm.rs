//! The local-map solution cut off at a horizon T: a node fires at the first
//! time its local map is unsafe.

use std::collections::HashMap;

use super::SimOutcome;
use crate::error::Error;
use crate::grid::Config;
use crate::mft::{ai_is_safe, available_info, is_safe, Limits};
use crate::variation::Variation;

/// Node v fires at the first t <= `horizon` where ai(v, t, C) is not
/// quiescent and t is unsafe; a quiescent local map is always safe.
///
/// With `per_node` each node's local map is decided on its own (slow);
/// otherwise one safeness search per t is shared by all nodes.
pub fn simulate_lm(
    horizon: u32,
    c: &Config,
    gamma: Variation,
    limits: &Limits,
    per_node: bool,
) -> Result<SimOutcome, Error> {
    let nodes = c.positions();
    let mut fired: HashMap<_, u32> = HashMap::new();
    for t in 0..=horizon {
        let mut shared = None;
        for &v in &nodes {
            if fired.contains_key(&v) || available_info(c, v, t)?.is_quiescent() {
                continue;
            }
            let safe = if per_node {
                ai_is_safe(c, v, t, gamma, limits)?
            } else {
                match shared {
                    Some(s) => s,
                    None => *shared.insert(is_safe(c, t, gamma, limits)?.is_safe()),
                }
            };
            if !safe {
                fired.insert(v, t);
            }
        }
        if fired.len() == nodes.len() {
            break;
        }
    }
    Ok(SimOutcome { nodes: nodes.into_iter().map(|v| (v, fired.get(&v).copied())).collect() })
}
