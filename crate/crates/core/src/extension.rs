//! Consistent extensions of sub-paths p_i..p_j, their maximal lengths f and g,
//! the covered-cell sets, and the noninterference test.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::board::{for_each_walk, longest_walk, reach, shortest_walk, Board};
use crate::grid::{PathConfig, Position};

/// Sub-path p_i..p_j with r <= i <= 0 <= j <= s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub i: i32,
    pub j: i32,
}

impl Window {
    pub fn new(i: i32, j: i32) -> Self {
        Window { i, j }
    }

    pub fn mirrored(self) -> Self {
        Window { i: -self.j, j: -self.i }
    }

    fn check(self, c: &PathConfig) {
        assert!(
            c.r() <= self.i && self.i <= 0 && 0 <= self.j && self.j <= c.s(),
            "window ({}, {}) out of range",
            self.i,
            self.j
        );
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extent {
    Finite(u32),
    Infinite,
}

impl Extent {
    pub fn is_finite(self) -> bool {
        matches!(self, Extent::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Extent::Finite(v) => Some(v),
            Extent::Infinite => None,
        }
    }

    pub fn plus(self, k: i32) -> Extent {
        match self {
            Extent::Finite(v) => Extent::Finite((v as i32 + k) as u32),
            Extent::Infinite => Extent::Infinite,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Infinite => f.write_str("INF"),
        }
    }
}

/// Cells of one extension, starting with the stub p_{i-1} (or p_{j+1})
/// and moving away from the window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension {
    pub cells: Vec<Position>,
}

impl Extension {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionList {
    pub extensions: Vec<Extension>,
    /// Some extension reaches the frame of the box.
    pub infinite: bool,
    /// The cap stopped the enumeration, or the side is infinite and nothing was enumerated.
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct ExtensionStats {
    pub window: Window,
    pub f: Extent,
    pub g: Extent,
    /// Cells of all left extensions inside the box.
    pub u_cells: BTreeSet<Position>,
    /// Cells of all right extensions inside the box.
    pub v_cells: BTreeSet<Position>,
    pub f_witness: Option<Extension>,
    pub g_witness: Option<Extension>,
}

/// Half-width of the search box: max{-r, s} + 3.
pub fn box_half_width(c: &PathConfig) -> i32 {
    c.radius() as i32 + 3
}

/// Board with p_i..p_j and both stubs occupied; returns the left stub.
fn left_frame(c: &PathConfig, w: Window, within: i32) -> (Board, Option<Position>) {
    w.check(c);
    let mut board = Board::new(within + 1);
    let lo = if w.i > c.r() { w.i - 1 } else { w.i };
    let hi = if w.j < c.s() { w.j + 1 } else { w.j };
    for k in lo..=hi {
        board.set(c.p(k), true);
    }
    (board, (w.i > c.r()).then(|| c.p(w.i - 1)))
}

fn enumerate_side(c: &PathConfig, w: Window, cap: usize) -> ExtensionList {
    let within = box_half_width(c);
    let (mut board, stub) = left_frame(c, w, within);
    let Some(stub) = stub else {
        return ExtensionList { extensions: Vec::new(), infinite: false, truncated: false };
    };
    let (_, infinite) = reach(&board, stub, within, true);
    if infinite && cap == 0 {
        return ExtensionList { extensions: Vec::new(), infinite, truncated: true };
    }
    let mut extensions = Vec::new();
    let mut truncated = false;
    let _ = for_each_walk(&mut board, stub, usize::MAX, within, &mut |walk| {
        if cap > 0 && extensions.len() == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        extensions.push(Extension { cells: walk.to_vec() });
        ControlFlow::Continue(())
    });
    ExtensionList { extensions, infinite, truncated }
}

/// Left extensions x_0 of p_i..p_j (each ending in p_{i-1}) inside the box.
/// With `cap` = 0 an infinite side yields no list, only the flag.
pub fn enumerate_left_extensions(c: &PathConfig, w: Window, cap: usize) -> ExtensionList {
    enumerate_side(c, w, cap)
}

/// Right extensions x_1 of p_i..p_j (each starting at p_{j+1}).
pub fn enumerate_right_extensions(c: &PathConfig, w: Window, cap: usize) -> ExtensionList {
    enumerate_side(&c.reversed(), w.mirrored(), cap)
}

struct Side {
    extent: Extent,
    cells: BTreeSet<Position>,
    witness: Option<Extension>,
}

fn side_stats(c: &PathConfig, w: Window, with_cells: bool) -> Side {
    let within = box_half_width(c);
    let (mut board, stub) = left_frame(c, w, within);
    let Some(stub) = stub else {
        return Side { extent: Extent::Finite(0), cells: BTreeSet::new(), witness: None };
    };
    let (cells, infinite) = reach(&board, stub, within, !with_cells);
    if infinite {
        return Side { extent: Extent::Infinite, cells, witness: None };
    }
    let best = longest_walk(&mut board, stub, within, usize::MAX);
    Side { extent: Extent::Finite(best.len() as u32), cells, witness: Some(Extension { cells: best }) }
}

pub fn extension_stats(c: &PathConfig, w: Window) -> ExtensionStats {
    let left = side_stats(c, w, true);
    let right = side_stats(&c.reversed(), w.mirrored(), true);
    ExtensionStats {
        window: w,
        f: left.extent,
        g: right.extent,
        u_cells: left.cells,
        v_cells: right.cells,
        f_witness: left.witness,
        g_witness: right.witness,
    }
}

/// f(i, j) alone.
pub fn f_value(c: &PathConfig, w: Window) -> Extent {
    side_stats(c, w, false).extent
}

/// g(i, j) alone.
pub fn g_value(c: &PathConfig, w: Window) -> Extent {
    side_stats(&c.reversed(), w.mirrored(), false).extent
}

fn touch(a: &BTreeSet<Position>, b: &BTreeSet<Position>) -> bool {
    a.iter().any(|p| b.contains(p) || p.neighbors().iter().any(|q| b.contains(q)))
}

/// NI from the covered-cell sets: no cell of one side equals or neighbors a cell of the other.
pub fn ni_from_stats(stats: &ExtensionStats) -> bool {
    !touch(&stats.u_cells, &stats.v_cells)
}

pub fn ni_check(c: &PathConfig, w: Window) -> bool {
    ni_from_stats(&extension_stats(c, w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiOutcome {
    Holds,
    /// First interfering pair in enumeration order.
    Fails {
        left: Extension,
        right: Extension,
    },
    /// A cap cut the enumeration before any failure showed up.
    Indeterminate,
}

/// NI by checking every pair of enumerated extensions with the full validator.
pub fn ni_bruteforce(c: &PathConfig, w: Window, cap: usize) -> NiOutcome {
    let lefts = enumerate_left_extensions(c, w, cap);
    let rights = enumerate_right_extensions(c, w, cap);
    let pad = |l: ExtensionList, fixed: bool| {
        if fixed {
            vec![Extension { cells: Vec::new() }]
        } else {
            l.extensions
        }
    };
    let truncated = lefts.truncated || rights.truncated;
    let us = pad(lefts, w.i == c.r());
    let vs = pad(rights, w.j == c.s());
    for x0 in &us {
        for x1 in &vs {
            if combine(c, w, x0, x1).is_none() {
                return NiOutcome::Fails { left: x0.clone(), right: x1.clone() };
            }
        }
    }
    if truncated {
        NiOutcome::Indeterminate
    } else {
        NiOutcome::Holds
    }
}

/// A shortest left extension passing through `target`, ending there.
pub fn left_extension_to(c: &PathConfig, w: Window, target: Position) -> Option<Extension> {
    let within = box_half_width(c);
    let (board, stub) = left_frame(c, w, within);
    shortest_walk(&board, stub?, within, target).map(|cells| Extension { cells })
}

/// A shortest right extension ending at `target`.
pub fn right_extension_to(c: &PathConfig, w: Window, target: Position) -> Option<Extension> {
    left_extension_to(&c.reversed(), w.mirrored(), target)
}

/// The configuration x_0 p_i..p_j x_1, if valid.
pub fn combine(c: &PathConfig, w: Window, x0: &Extension, x1: &Extension) -> Option<PathConfig> {
    let mut cells: Vec<Position> = x0.cells.iter().rev().copied().collect();
    let origin = cells.len() + (-w.i) as usize;
    cells.extend((w.i..=w.j).map(|k| c.p(k)));
    cells.extend(x1.cells.iter().copied());
    PathConfig::from_cells(&cells, origin).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FgEntry {
    pub window: Window,
    pub f: Extent,
    pub g: Extent,
}

impl FgEntry {
    /// -2i + j + g
    pub fn a(&self) -> Extent {
        self.g.plus(-2 * self.window.i + self.window.j)
    }

    /// 2j - i + f
    pub fn b(&self) -> Extent {
        self.f.plus(2 * self.window.j - self.window.i)
    }

    pub fn h(&self) -> Extent {
        self.a().max(self.b())
    }

    /// W(i, j) is finite iff both projections are.
    pub fn w_finite(&self) -> bool {
        self.f.is_finite() && self.g.is_finite()
    }
}

/// f, g and h for every window, ordered by i then j.
#[derive(Debug, Clone)]
pub struct FgTable {
    pub r: i32,
    pub s: i32,
    entries: Vec<FgEntry>,
}

impl FgTable {
    /// Table from given values, for replaying published rows.
    pub fn from_fn(r: i32, s: i32, mut fg: impl FnMut(Window) -> (Extent, Extent)) -> Self {
        let entries = windows(r, s)
            .map(|w| {
                let (f, g) = fg(w);
                FgEntry { window: w, f, g }
            })
            .collect();
        FgTable { r, s, entries }
    }

    pub fn get(&self, i: i32, j: i32) -> &FgEntry {
        let k = (i - self.r) as usize * (self.s + 1) as usize + j as usize;
        &self.entries[k]
    }

    pub fn entries(&self) -> &[FgEntry] {
        &self.entries
    }
}

fn windows(r: i32, s: i32) -> impl Iterator<Item = Window> {
    (r..=0).flat_map(move |i| (0..=s).map(move |j| Window::new(i, j)))
}

/// Evaluates every window; windows run in parallel, output order is fixed.
pub fn fg_table(c: &PathConfig) -> FgTable {
    let rev = c.reversed();
    let ws: Vec<Window> = windows(c.r(), c.s()).collect();
    let entries = ws
        .par_iter()
        .map(|&w| FgEntry { window: w, f: f_value(c, w), g: side_stats(&rev, w.mirrored(), false).extent })
        .collect();
    FgTable { r: c.r(), s: c.s(), entries }
}
