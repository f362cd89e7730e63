//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! The oracles here avoid the library's search code: validity is checked by
//! comparing every pair of cells, and extensions are grown one cell at a time
//! and kept when that full check passes.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use fssp_core::extension::{Extent, Window};
use fssp_core::grid::{Config, Direction, PathConfig, Position};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn path(text: &str) -> PathConfig {
    match fssp_core::parse_config(text).unwrap() {
        Config::Path(p) => p,
        Config::Region(_) => panic!("{text} is a region"),
    }
}

/// Pairwise check of the path rules on a list of cells p_r..p_s.
pub fn naive_valid(cells: &[Position]) -> bool {
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if cells[i] == cells[j] {
                return false;
            }
            let d = (cells[i].x - cells[j].x).abs() + (cells[i].y - cells[j].y).abs();
            if d == 1 && j != i + 1 {
                return false;
            }
            if j == i + 1 && d != 1 {
                return false;
            }
        }
    }
    true
}

fn all_moves(n: usize) -> Vec<Vec<Direction>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                Direction::ALL.into_iter().map(move |d| {
                    let mut m = m.clone();
                    m.push(d);
                    m
                })
            })
            .collect();
    }
    out
}

/// Every valid path configuration with exactly `n` cells, one per
/// configuration (a path and its reversal are the same configuration).
pub fn paths_with_cells(n: usize) -> Vec<PathConfig> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for left_len in 0..n {
        let right_len = n - 1 - left_len;
        let lefts = all_moves(left_len);
        let rights = all_moves(right_len);
        for l in &lefts {
            for r in &rights {
                if let Ok(c) = PathConfig::from_moves(l.clone(), r.clone()) {
                    if seen.insert(c.canonical_key()) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

pub fn paths_up_to(n: usize) -> Vec<PathConfig> {
    (1..=n).flat_map(paths_with_cells).collect()
}

/// A random valid path with at most `max_cells` cells; turns are biased so
/// that hooks and pockets show up.
pub fn random_path(rng: &mut ChaCha8Rng, max_cells: usize) -> PathConfig {
    loop {
        let n = rng.gen_range(1..=max_cells);
        let left_len = rng.gen_range(0..n);
        let mut walk = |len: usize| {
            let mut d = rng.gen_range(0..4usize);
            (0..len)
                .map(|_| {
                    match rng.gen_range(0..10) {
                        0..=2 => d = (d + 1) % 4,
                        3 => d = (d + 3) % 4,
                        _ => {}
                    }
                    Direction::from_index(d)
                })
                .collect::<Vec<_>>()
        };
        let l = walk(left_len);
        let r = walk(n - 1 - left_len);
        if let Ok(c) = PathConfig::from_moves(l, r) {
            return c;
        }
    }
}

/// Left extensions of the window found by growing walks cell by cell and
/// checking the whole configuration each time. Lengths count the stub.
/// Returns None when some walk reaches `limit` cells.
pub fn naive_left_extensions(c: &PathConfig, w: Window, limit: usize) -> Option<Vec<Vec<Position>>> {
    if w.i == c.r() {
        return Some(vec![Vec::new()]);
    }
    let core: Vec<Position> = (w.i..=w.j).map(|k| c.p(k)).collect();
    let right_stub: Vec<Position> = if w.j < c.s() { vec![c.p(w.j + 1)] } else { Vec::new() };
    let mut out = Vec::new();
    let mut stack = vec![vec![c.p(w.i - 1)]];
    while let Some(x0) = stack.pop() {
        if x0.len() >= limit {
            return None;
        }
        let mut cells: Vec<Position> = x0.iter().rev().copied().collect();
        cells.extend(core.iter().copied());
        cells.extend(right_stub.iter().copied());
        if !naive_valid(&cells) {
            continue;
        }
        let tip = *x0.last().unwrap();
        for q in tip.neighbors() {
            let mut next = x0.clone();
            next.push(q);
            stack.push(next);
        }
        out.push(x0);
    }
    out.sort();
    Some(out)
}

pub fn naive_right_extensions(c: &PathConfig, w: Window, limit: usize) -> Option<Vec<Vec<Position>>> {
    naive_left_extensions(&c.reversed(), w.mirrored(), limit)
}

/// f by brute force: the longest left extension, or infinite when walks
/// reach `limit` cells.
pub fn naive_f(c: &PathConfig, w: Window, limit: usize) -> Extent {
    match naive_left_extensions(c, w, limit) {
        Some(xs) => Extent::Finite(xs.iter().map(Vec::len).max().unwrap() as u32),
        None => Extent::Infinite,
    }
}

pub fn naive_g(c: &PathConfig, w: Window, limit: usize) -> Extent {
    naive_f(&c.reversed(), w.mirrored(), limit)
}

/// Graph distances from the origin by plain BFS over the cell set.
pub fn naive_distances(cells: &BTreeSet<Position>, from: Position) -> HashMap<Position, u32> {
    let mut dist = HashMap::from([(from, 0)]);
    let mut frontier = vec![from];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for p in frontier {
            for q in p.neighbors() {
                if cells.contains(&q) && !dist.contains_key(&q) {
                    dist.insert(q, d);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Connected cell sets with `n` cells containing the origin.
pub fn regions_with_cells(n: usize) -> Vec<BTreeSet<Position>> {
    let mut level: HashSet<BTreeSet<Position>> = HashSet::from([BTreeSet::from([Position::ORIGIN])]);
    for _ in 1..n {
        let mut next = HashSet::new();
        for set in &level {
            for p in set {
                for q in p.neighbors() {
                    if !set.contains(&q) {
                        let mut s = set.clone();
                        s.insert(q);
                        next.insert(s);
                    }
                }
            }
        }
        level = next;
    }
    let mut out: Vec<_> = level.into_iter().collect();
    out.sort();
    out
}

/// Configurations with a closed hand, found by a seeded search over random
/// hooks: (text, left closed, right closed, CNI holds).
pub const BOTTLES: &[(&str, bool, bool, bool)] = &[
    ("PATH ES|WWWSSSEEN", false, true, false),
    ("PATH E|SSSEEENNNNNW", true, false, false),
    ("PATH W|NNWWWWSSSSEES", true, false, true),
    ("PATH WNN|ENNNNWWWS", true, false, true),
    ("PATH EE|WWSSSESEEENNW", false, true, true),
    ("PATH E|WWSSSSSEEENNW", false, true, true),
    ("PATH NNNN|EENEENNNWWS", false, true, true),
    ("PATH SSEE|NWWWWSSSEEN", false, true, true),
    ("PATH NWNNEN|EENNNNNW", true, false, false),
    ("PATH W|NNWWWWSSSSEEN", true, true, false),
    ("PATH WWWNNE|NNENNWWS", true, true, false),
];
