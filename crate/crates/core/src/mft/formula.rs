//! Closed-form firing times for path configurations.

use super::{Method, MftResult, Witness};
use crate::cni::{cni_with_table, hand_status_with_table, ConfigType, Hand};
use crate::extension::{fg_table, Extent, FgTable, Window};
use crate::grid::PathConfig;

/// min over windows of h(i, j), with every minimizing window in (i, j) order.
pub fn t_tilde(c: &PathConfig) -> (u32, Vec<Window>) {
    t_tilde_from_table(&fg_table(c))
}

pub fn t_tilde_from_table(table: &FgTable) -> (u32, Vec<Window>) {
    let best = table.entries().iter().filter_map(|e| e.h().finite()).min().expect("h(r, s) is finite");
    let windows = table.entries().iter().filter(|e| e.h() == Extent::Finite(best)).map(|e| e.window).collect();
    (best, windows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simplified {
    pub value: u32,
    /// None when the left hand dominates (-r > s).
    pub j0: Option<i32>,
}

/// Firing time of a free-left-hand configuration satisfying CNI, from the
/// row j -> g(r, j) alone.
pub fn free_hand_simplified(r: i32, s: i32, g_row: impl Fn(i32) -> Extent) -> Simplified {
    if -r > s {
        return Simplified { value: (-2 * r + s) as u32, j0: None };
    }
    let j0 = (0..=s)
        .find(|&j| g_row(j).finite().is_some_and(|g| -r + g as i32 <= j + 1))
        .expect("g(r, s) = 0 satisfies the condition");
    let g = g_row(j0).finite().unwrap() as i32;
    let value = if -r + g == j0 + 1 { -r + 2 * j0 + 1 } else { -r + 2 * j0 };
    Simplified { value: value as u32, j0: Some(j0) }
}

/// The r = 0 case: row j -> g(0, j).
pub fn two_path_simplified(s: i32, g_row: impl Fn(i32) -> Extent) -> Simplified {
    free_hand_simplified(0, s, g_row)
}

#[derive(Debug, Clone)]
pub enum FormulaOutcome {
    Exact(MftResult),
    /// No formula applies; the value lies in [lower, upper].
    Inconclusive {
        lower: u32,
        upper: u32,
        windows: Vec<Window>,
    },
}

fn exact(value: u32, method: Method, witness: Witness) -> FormulaOutcome {
    FormulaOutcome::Exact(MftResult { value, method, witness })
}

pub fn mft_formula(c: &PathConfig) -> FormulaOutcome {
    let table = fg_table(c);
    let (r, s) = (c.r(), c.s());
    let hs = hand_status_with_table(&table);
    let (tt, windows) = t_tilde_from_table(&table);
    match hs.kind {
        ConfigType::I => return exact((-r + s + (-r).max(s)) as u32, Method::TypeI, Witness::None),
        ConfigType::II if hs.left == Hand::Free && -r >= s => {
            return exact((-2 * r + s) as u32, Method::TypeII, Witness::None)
        }
        ConfigType::II if hs.right == Hand::Free && s >= -r => {
            return exact((-r + 2 * s) as u32, Method::TypeII, Witness::None)
        }
        _ => {}
    }
    if cni_with_table(c, &table).verdict {
        if r == 0 {
            let v = two_path_simplified(s, |j| table.get(0, j).g).value;
            assert_eq!(v, tt, "two-path form disagrees with the window minimum for {c}");
        } else if hs.left == Hand::Free {
            let v = free_hand_simplified(r, s, |j| table.get(r, j).g).value;
            assert_eq!(v, tt, "free-hand form disagrees with the window minimum for {c}");
        } else if hs.right == Hand::Free {
            let v = free_hand_simplified(-s, -r, |j| table.get(-j, s).f).value;
            assert_eq!(v, tt, "free-hand form disagrees with the window minimum for {c}");
        }
        return exact(tt, Method::TTilde, Witness::Windows(windows));
    }
    let (lower, upper) = bounds_with(r, s, hs.left, hs.right, tt);
    FormulaOutcome::Inconclusive { lower, upper, windows }
}

fn bounds_with(r: i32, s: i32, left: Hand, right: Hand, tt: u32) -> (u32, u32) {
    let mut lower = 0;
    if left == Hand::Free {
        lower = lower.max(-2 * r + s);
    }
    if right == Hand::Free {
        lower = lower.max(-r + 2 * s);
    }
    let upper = ((-r + s + (-r).max(s)) as u32).min(tt);
    (lower as u32, upper)
}

/// Lower bound from the free hands and upper bound min{-r+s+max{-r,s}, T~}.
pub fn mft_bounds(c: &PathConfig) -> (u32, u32) {
    let table = fg_table(c);
    let hs = hand_status_with_table(&table);
    let (tt, _) = t_tilde_from_table(&table);
    bounds_with(c.r(), c.s(), hs.left, hs.right, tt)
}
