//! Equivalence steps by enumerating candidate configurations directly.
//!
//! A candidate must contain the local map M(v, t, C) and its in-configuration
//! neighbors, avoid its out-of-configuration neighbors, and stay within
//! distance t + 1 of the origin; survivors are kept when their own local map
//! at v is identical. Exponential, so every candidate is charged to a budget.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use super::info::{available_info, AvailableInfo};
use super::{Budget, Limits};
use crate::error::Error;
use crate::grid::{radius, Config, PathConfig, Position, RegionConfig};
use crate::variation::Variation;

type Emit<'a> = dyn FnMut(&[Position]) -> Result<ControlFlow<()>, Error> + 'a;

type Visit<'a> = dyn FnMut(Config, Position) -> ControlFlow<()> + 'a;

/// Every C' with C ≡'_t C', found by enumeration; radius(C) <= t required.
pub fn equiv_step_generic(c: &Config, t: u32, gamma: Variation, limits: &Limits) -> Result<Vec<Config>, Error> {
    if !gamma.member(c) {
        return Err(Error::Precondition(format!("configuration is not in {gamma}")));
    }
    if radius(c) > t {
        return Err(Error::Precondition("radius exceeds t".into()));
    }
    let budget = Budget::new(limits);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let _ = generic_node_successors(c, t, gamma, None, &budget, &mut |d, _| {
        if seen.insert(d.canonical_key()) {
            out.push(d);
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub(crate) fn generic_node_successors(
    c: &Config,
    t: u32,
    gamma: Variation,
    only: Option<Position>,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    let mut nodes = c.positions();
    nodes.sort();
    for v in nodes {
        if only.is_some_and(|o| o != v) {
            continue;
        }
        let info = available_info(c, v, t)?;
        if info.is_quiescent() {
            continue;
        }
        if node_candidates(c, &info, v, t, gamma, budget, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn node_candidates(
    c: &Config,
    info: &AvailableInfo,
    v: Position,
    t: u32,
    gamma: Variation,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    let m: BTreeSet<Position> = info.cells().into_iter().collect();
    let mut seed: Vec<Position> = m.iter().copied().collect();
    let mut crosses = HashSet::new();
    for p in &m {
        for q in p.neighbors() {
            if m.contains(&q) {
                continue;
            }
            if c.contains(q) {
                if !seed.contains(&q) {
                    seed.push(q);
                }
            } else {
                crosses.insert(q);
            }
        }
    }
    let reach = t as i32 + 1;
    let allowed =
        |p: Position| p.manhattan() <= reach && !crosses.contains(&p) && (gamma != Variation::LineAb || p.y == 0);
    if seed.iter().any(|&p| !allowed(p)) {
        return Ok(ControlFlow::Continue(()));
    }
    let mut depth = HashMap::new();
    if gamma != Variation::TwoReg {
        let seed_set: HashSet<Position> = seed.iter().copied().collect();
        let mut queue = VecDeque::from([(Position::ORIGIN, 0)]);
        depth.insert(Position::ORIGIN, 0);
        while let Some((p, d)) = queue.pop_front() {
            for q in p.neighbors() {
                if seed_set.contains(&q) && !depth.contains_key(&q) {
                    depth.insert(q, d + 1);
                    queue.push_back((q, d + 1));
                }
            }
        }
    }
    let current: Vec<Position> = seed.clone();
    let in_set: HashSet<Position> = seed.iter().copied().collect();
    let mut marked: HashSet<Position> = in_set.clone();
    let mut untried = Vec::new();
    for p in &seed {
        for q in p.neighbors() {
            if allowed(q) && marked.insert(q) {
                untried.push(q);
            }
        }
    }
    let mut emit = |set: &[Position]| -> Result<ControlFlow<()>, Error> {
        budget.charge()?;
        let Some(cfg) = candidate(set, gamma) else {
            return Ok(ControlFlow::Continue(()));
        };
        if radius(&cfg) > t + 1 || !gamma.member(&cfg) {
            return Ok(ControlFlow::Continue(()));
        }
        if available_info(&cfg, v, t)? == *info {
            return Ok(visit(cfg, v));
        }
        Ok(ControlFlow::Continue(()))
    };
    if emit(&current)?.is_break() {
        return Ok(ControlFlow::Break(()));
    }
    let mut state = Growth { current, in_set, marked, depth, reach };
    grow(&mut state, untried, &allowed, gamma, &mut emit)
}

struct Growth {
    current: Vec<Position>,
    in_set: HashSet<Position>,
    marked: HashSet<Position>,
    /// Distance from the origin along the path, for path variations.
    depth: HashMap<Position, i32>,
    reach: i32,
}

/// Enumerates each connected superset of `current` exactly once by growing
/// from an untried frontier; a cell skipped at one level stays excluded for
/// the later siblings.
fn grow(
    g: &mut Growth,
    mut untried: Vec<Position>,
    allowed: &dyn Fn(Position) -> bool,
    gamma: Variation,
    emit: &mut Emit,
) -> Result<ControlFlow<()>, Error> {
    while let Some(p) = untried.pop() {
        if !extendable(g, p, gamma) {
            continue;
        }
        g.current.push(p);
        g.in_set.insert(p);
        if emit(&g.current)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
        let mut fresh = Vec::new();
        for q in p.neighbors() {
            if allowed(q) && g.marked.insert(q) {
                fresh.push(q);
            }
        }
        let mut next = untried.clone();
        next.extend(fresh.iter().copied());
        let flow = grow(g, next, allowed, gamma, emit)?;
        for q in &fresh {
            g.marked.remove(q);
        }
        g.in_set.remove(&p);
        g.depth.remove(&p);
        g.current.pop();
        if flow.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Path variations only grow sets whose induced graph stays a path, and
/// only while the new end stays within t + 1 of the origin along the path.
fn extendable(g: &mut Growth, p: Position, gamma: Variation) -> bool {
    if gamma == Variation::TwoReg {
        return true;
    }
    let nbrs: Vec<Position> = p.neighbors().into_iter().filter(|q| g.in_set.contains(q)).collect();
    if nbrs.len() != 1 {
        return false;
    }
    let q = nbrs[0];
    let degree = q.neighbors().iter().filter(|n| g.in_set.contains(n)).count() + 1;
    let cap = if gamma == Variation::TwoPath && q == Position::ORIGIN { 1 } else { 2 };
    let Some(&d) = g.depth.get(&q) else { return false };
    if degree > cap || d + 1 > g.reach {
        return false;
    }
    g.depth.insert(p, d + 1);
    true
}

fn candidate(set: &[Position], gamma: Variation) -> Option<Config> {
    if gamma == Variation::TwoReg {
        return RegionConfig::new(set.iter().copied().collect()).ok().map(Config::Region);
    }
    path_from_set(set).map(Config::Path)
}

/// The path through exactly these cells, if their induced graph is one.
pub fn path_from_set(set: &[Position]) -> Option<PathConfig> {
    let cells: HashSet<Position> = set.iter().copied().collect();
    let degree = |p: &Position| p.neighbors().iter().filter(|q| cells.contains(q)).count();
    if cells.iter().any(|p| degree(p) > 2) || !cells.contains(&Position::ORIGIN) {
        return None;
    }
    let start = cells.iter().filter(|p| degree(p) <= 1).min().copied()?;
    let mut order = vec![start];
    let mut prev = None;
    let mut at = start;
    while let Some(&next) = at.neighbors().iter().find(|q| cells.contains(q) && Some(**q) != prev) {
        prev = Some(at);
        at = next;
        order.push(at);
    }
    if order.len() != cells.len() {
        return None;
    }
    let origin = order.iter().position(|&p| p == Position::ORIGIN)?;
    PathConfig::from_cells(&order, origin).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_config;
    use crate::mft::localmap::equiv_step_path;

    #[test]
    fn singleton_region() {
        let c = parse_config("REG (0,0)").unwrap();
        let step = equiv_step_generic(&c, 0, Variation::TwoReg, &Limits::default()).unwrap();
        assert_eq!(step, vec![c]);
    }

    #[test]
    fn matches_path_route_on_lines() {
        let lim = Limits::default();
        for (a, b) in [(0, 2), (1, 1), (2, 3)] {
            let c = Config::Path(PathConfig::line(a, b));
            for t in radius(&c)..=radius(&c) + 2 {
                let keys = |v: Vec<Config>| v.iter().map(|c| c.canonical_key()).collect::<BTreeSet<_>>();
                let g = keys(equiv_step_generic(&c, t, Variation::GTwoPath, &lim).unwrap());
                let p = keys(equiv_step_path(&c, t, Variation::GTwoPath, &lim).unwrap());
                assert_eq!(g, p, "line ({a},{b}) t={t}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = parse_config("REG (-3,0),(-2,0),(-1,0),(0,0),(1,0),(2,0),(3,0)").unwrap();
        let r = equiv_step_generic(&c, 3, Variation::TwoReg, &Limits { max_nodes: 3 });
        assert!(matches!(r, Err(Error::BudgetExceeded { limit: 3 })));
    }
}
