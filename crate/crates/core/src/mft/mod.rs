//! Available information, equivalence steps, the safeness search, and the
//! closed-form firing-time formulas.

use std::cell::Cell;
use std::fmt;

use crate::error::Error;
use crate::extension::Window;

pub mod formula;
pub mod generic;
pub mod info;
pub mod localmap;

pub use formula::{
    free_hand_simplified, mft_bounds, mft_formula, t_tilde, t_tilde_from_table, two_path_simplified, FormulaOutcome,
    Simplified,
};
pub use generic::equiv_step_generic;
pub use info::{available_info, window, AvailableInfo};
pub use localmap::{ai_is_safe, equiv_step_path, equivalence_class, is_safe, mft_localmap, Safeness, SafenessChain};

/// Resource limits for exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum configurations a single search may generate.
    pub max_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: 1_000_000 }
    }
}

pub(crate) struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub(crate) fn new(limits: &Limits) -> Self {
        Budget { limit: limits.max_nodes, used: Cell::new(0) }
    }

    pub(crate) fn charge(&self) -> Result<(), Error> {
        let n = self.used.get() + 1;
        self.used.set(n);
        if n > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Localmap,
    TTilde,
    TypeI,
    TypeII,
    TwoPathJ0,
    FreeHandJ0,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Localmap => "localmap",
            Method::TTilde => "t_tilde",
            Method::TypeI => "type_i",
            Method::TypeII => "type_ii",
            Method::TwoPathJ0 => "two_path_j0",
            Method::FreeHandJ0 => "free_hand_j0",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// Minimizing windows of h.
    Windows(Vec<Window>),
    /// Chain proving value - 1 safe, and the size of the class at value.
    Search {
        chain: Option<SafenessChain>,
        class_size: usize,
    },
    None,
}

#[derive(Debug, Clone)]
pub struct MftResult {
    pub value: u32,
    pub method: Method,
    pub witness: Witness,
}
