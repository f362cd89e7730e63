//! Dense occupancy grid and the walk searches built on it.
//!
//! A walk starts at an occupied stub cell and grows one cell at a time; each
//! new cell must be empty and have no occupied neighbor other than the tip it
//! grows from. Walks built this way are exactly the extensions that keep the
//! whole path valid.

use std::collections::{BTreeSet, VecDeque};
use std::ops::ControlFlow;

use crate::grid::{Direction, Position};

pub(crate) struct Board {
    half: i32,
    side: usize,
    occ: Vec<bool>,
}

impl Board {
    /// Covers |x|, |y| <= half.
    pub(crate) fn new(half: i32) -> Self {
        let side = (2 * half + 1) as usize;
        Board { half, side, occ: vec![false; side * side] }
    }

    fn idx(&self, p: Position) -> Option<usize> {
        if p.chebyshev() > self.half {
            return None;
        }
        Some((p.y + self.half) as usize * self.side + (p.x + self.half) as usize)
    }

    pub(crate) fn occupied(&self, p: Position) -> bool {
        self.idx(p).is_some_and(|k| self.occ[k])
    }

    pub(crate) fn set(&mut self, p: Position, v: bool) {
        let k = self.idx(p).expect("position outside board");
        self.occ[k] = v;
    }

    /// Can `p` be appended to a walk whose tip is `tip`?
    pub(crate) fn placeable(&self, p: Position, tip: Position, within: i32) -> bool {
        p.chebyshev() <= within && !self.occupied(p) && p.neighbors().into_iter().all(|n| n == tip || !self.occupied(n))
    }
}

/// Cells reachable by walks from `start`, including `start`, and whether
/// any of them lies on the frame |x| or |y| = `within`.
pub(crate) fn reach(board: &Board, start: Position, within: i32, stop_at_frame: bool) -> (BTreeSet<Position>, bool) {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut touches = false;
    let free = |c: Position| {
        c.chebyshev() <= within
            && !board.occupied(c)
            && c.neighbors().into_iter().all(|n| n == start || !board.occupied(n))
    };
    while let Some(p) = queue.pop_front() {
        for q in p.neighbors() {
            if !seen.contains(&q) && free(q) {
                seen.insert(q);
                if q.chebyshev() == within {
                    touches = true;
                    if stop_at_frame {
                        return (seen, true);
                    }
                }
                queue.push_back(q);
            }
        }
    }
    (seen, touches)
}

/// Shortest walk from `start` ending at `target`; shortest walks are always
/// valid because a touching pair would give a shortcut.
pub(crate) fn shortest_walk(board: &Board, start: Position, within: i32, target: Position) -> Option<Vec<Position>> {
    let mut parent = std::collections::HashMap::from([(start, start)]);
    let mut queue = VecDeque::from([start]);
    let free = |c: Position| {
        c.chebyshev() <= within
            && !board.occupied(c)
            && c.neighbors().into_iter().all(|n| n == start || !board.occupied(n))
    };
    while let Some(p) = queue.pop_front() {
        if p == target {
            let mut walk = vec![p];
            let mut at = p;
            while at != start {
                at = parent[&at];
                walk.push(at);
            }
            walk.reverse();
            return Some(walk);
        }
        for q in p.neighbors() {
            if !parent.contains_key(&q) && free(q) {
                parent.insert(q, p);
                queue.push_back(q);
            }
        }
    }
    None
}

/// Visits every walk from `start` (itself occupied) of at most `max_len`
/// cells, in preorder with directions tried E, N, W, S.
pub(crate) fn for_each_walk<F>(
    board: &mut Board,
    start: Position,
    max_len: usize,
    within: i32,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Position]) -> ControlFlow<()>,
{
    let mut walk = vec![start];
    walk_rec(board, &mut walk, max_len, within, visit)
}

fn walk_rec<F>(
    board: &mut Board,
    walk: &mut Vec<Position>,
    max_len: usize,
    within: i32,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Position]) -> ControlFlow<()>,
{
    visit(walk)?;
    if walk.len() >= max_len {
        return ControlFlow::Continue(());
    }
    let tip = *walk.last().unwrap();
    for d in Direction::ALL {
        let q = tip.step(d);
        if board.placeable(q, tip, within) {
            board.set(q, true);
            walk.push(q);
            let flow = walk_rec(board, walk, max_len, within, visit);
            walk.pop();
            board.set(q, false);
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Number of cells a walk with tip `tip` could still add, an upper bound.
fn room(board: &Board, tip: Position, within: i32) -> usize {
    reach(board, tip, within, false).0.len() - 1
}

/// Longest walk from `start`, first in search order among the longest.
/// Stops as soon as a walk of `enough` cells is found.
pub(crate) fn longest_walk(board: &mut Board, start: Position, within: i32, enough: usize) -> Vec<Position> {
    let mut best = vec![start];
    let mut walk = vec![start];
    longest_rec(board, &mut walk, within, enough, &mut best);
    best
}

fn longest_rec(
    board: &mut Board,
    walk: &mut Vec<Position>,
    within: i32,
    enough: usize,
    best: &mut Vec<Position>,
) -> bool {
    if walk.len() > best.len() {
        *best = walk.clone();
        if best.len() >= enough {
            return true;
        }
    }
    let tip = *walk.last().unwrap();
    if walk.len() + room(board, tip, within) <= best.len() {
        return false;
    }
    for d in Direction::ALL {
        let q = tip.step(d);
        if board.placeable(q, tip, within) {
            board.set(q, true);
            walk.push(q);
            let done = longest_rec(board, walk, within, enough, best);
            walk.pop();
            board.set(q, false);
            if done {
                return true;
            }
        }
    }
    false
}
