//! Noninterference of extensions, hand freeness, and configuration types.

use std::fmt;

use crate::error::Error;
use crate::extension::{
    extension_stats, f_value, fg_table, g_value, left_extension_to, ni_bruteforce, ni_from_stats, right_extension_to,
    Extension, FgTable, NiOutcome, Window,
};
use crate::grid::PathConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    I,
    J,
    K,
}

#[derive(Debug, Clone)]
pub struct CniFailure {
    pub window: Window,
    pub clause: Clause,
    /// An interfering pair (left, right).
    pub witness: (Extension, Extension),
}

#[derive(Debug, Clone)]
pub struct CniReport {
    pub i_set: Vec<Window>,
    pub j_set: Vec<Window>,
    pub k_set: Vec<Window>,
    pub failures: Vec<CniFailure>,
    pub verdict: bool,
}

/// K: W finite. I: W(i,j) infinite, W(i-1,j) finite. J: W(i,j) infinite, W(i,j+1) finite.
pub fn ijk_sets(table: &FgTable) -> (Vec<Window>, Vec<Window>, Vec<Window>) {
    let (mut i_set, mut j_set, mut k_set) = (Vec::new(), Vec::new(), Vec::new());
    for e in table.entries() {
        let w = e.window;
        if e.w_finite() {
            k_set.push(w);
            continue;
        }
        if w.i > table.r && table.get(w.i - 1, w.j).w_finite() {
            i_set.push(w);
        }
        if w.j < table.s && table.get(w.i, w.j + 1).w_finite() {
            j_set.push(w);
        }
    }
    (i_set, j_set, k_set)
}

/// An interfering pair for a window where NI fails.
fn witness(c: &PathConfig, w: Window) -> Option<(Extension, Extension)> {
    let stats = extension_stats(c, w);
    if stats.f.is_finite() && stats.g.is_finite() {
        if let NiOutcome::Fails { left, right } = ni_bruteforce(c, w, 0) {
            return Some((left, right));
        }
    }
    for &p in &stats.u_cells {
        for q in std::iter::once(p).chain(p.neighbors()) {
            if stats.v_cells.contains(&q) {
                let left = left_extension_to(c, w, p)?;
                let right = right_extension_to(c, w, q)?;
                return Some((left, right));
            }
        }
    }
    None
}

pub fn cni_verdict(c: &PathConfig) -> CniReport {
    cni_with_table(c, &fg_table(c))
}

pub(crate) fn cni_with_table(c: &PathConfig, table: &FgTable) -> CniReport {
    let (i_set, j_set, k_set) = ijk_sets(table);
    let mut failures = Vec::new();
    let clauses = k_set
        .iter()
        .map(|&w| (w, Clause::K))
        .chain(i_set.iter().map(|&w| (w, Clause::I)))
        .chain(j_set.iter().map(|&w| (w, Clause::J)));
    for (w, clause) in clauses {
        if !ni_from_stats(&extension_stats(c, w)) {
            let witness = witness(c, w).expect("failing window has an interfering pair");
            failures.push(CniFailure { window: w, clause, witness });
        }
    }
    let verdict = failures.is_empty();
    CniReport { i_set, j_set, k_set, failures, verdict }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hand {
    Free,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigType {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HandStatus {
    pub left: Hand,
    pub right: Hand,
    pub kind: ConfigType,
}

impl fmt::Display for HandStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hand = |h: Hand| if h == Hand::Free { "FREE" } else { "CLOSED" };
        let kind = match self.kind {
            ConfigType::I => "I",
            ConfigType::II => "II",
            ConfigType::III => "III",
        };
        write!(f, "TYPE {kind} left={} right={}", hand(self.left), hand(self.right))
    }
}

/// Left free iff r = 0 or f(r+1, s) is infinite; right is the mirror image.
pub fn hand_status(c: &PathConfig) -> HandStatus {
    let (r, s) = (c.r(), c.s());
    let left = r == 0 || !f_value(c, Window::new(r + 1, s)).is_finite();
    let right = s == 0 || !g_value(c, Window::new(r, s - 1)).is_finite();
    classify(left, right)
}

pub(crate) fn hand_status_with_table(table: &FgTable) -> HandStatus {
    let (r, s) = (table.r, table.s);
    let left = r == 0 || !table.get(r + 1, s).f.is_finite();
    let right = s == 0 || !table.get(r, s - 1).g.is_finite();
    classify(left, right)
}

fn classify(left: bool, right: bool) -> HandStatus {
    let free = |b: bool| if b { Hand::Free } else { Hand::Closed };
    let (left, right) = (free(left), free(right));
    let kind = match (left, right) {
        (Hand::Free, Hand::Free) => ConfigType::I,
        (Hand::Closed, Hand::Closed) => ConfigType::III,
        _ => ConfigType::II,
    };
    HandStatus { left, right, kind }
}

/// For Type II with a free left hand: CNI holds iff NI(r+1, j0), where j0
/// is the smallest j with W(r, j) finite.
pub fn cni_type2_shortcut(c: &PathConfig) -> Result<bool, Error> {
    let hs = hand_status(c);
    if c.r() == 0 {
        return Err(Error::Precondition("the left hand is empty (r = 0)".into()));
    }
    if hs.kind != ConfigType::II || hs.left != Hand::Free {
        return Err(Error::Precondition("configuration is not Type II with a free left hand".into()));
    }
    let r = c.r();
    let j0 = (0..=c.s()).find(|&j| g_value(c, Window::new(r, j)).is_finite()).expect("W(r, s) is finite");
    Ok(ni_from_stats(&extension_stats(c, Window::new(r + 1, j0))))
}
