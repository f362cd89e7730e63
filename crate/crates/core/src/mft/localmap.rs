//! The local map algorithm: breadth-first search over the equivalence class
//! of a configuration at time t, looking for a member of radius t + 1.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use super::generic::generic_node_successors;
use super::info::{available_info, window, AvailableInfo};
use super::{Budget, Limits, Method, MftResult, Witness};
use crate::board::{for_each_walk, longest_walk, Board};
use crate::error::Error;
use crate::grid::{radius, Config, PathConfig, Position};
use crate::variation::{line_ab, Variation};

/// Configurations C_0 = C, C_1, ... where consecutive members share the
/// local map of `links[k]` at time `t`; the last one has radius t + 1.
#[derive(Debug, Clone)]
pub struct SafenessChain {
    pub t: u32,
    pub configs: Vec<Config>,
    pub links: Vec<Position>,
}

impl SafenessChain {
    pub fn terminal_radius(&self) -> u32 {
        radius(self.configs.last().unwrap())
    }
}

#[derive(Debug, Clone)]
pub enum Safeness {
    Safe(SafenessChain),
    /// Every member of the class has radius at most t.
    Unsafe {
        class: Vec<Config>,
    },
}

impl Safeness {
    pub fn is_safe(&self) -> bool {
        matches!(self, Safeness::Safe(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Every successor of radius at most t + 1.
    All,
    /// A successor of radius t + 1 if one exists, otherwise every successor.
    Search,
}

type Visit<'a> = dyn FnMut(Config, Position) -> ControlFlow<()> + 'a;

/// Successors of `c` sharing the local map at the node with index or
/// position `v`; `v` = None means every node.
pub(crate) fn successors(
    c: &Config,
    t: u32,
    gamma: Variation,
    mode: Mode,
    only: Option<Position>,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    match (gamma, c) {
        (Variation::TwoReg, _) => generic_node_successors(c, t, gamma, only, budget, visit),
        (Variation::LineAb, Config::Path(_)) => line_successors(c, t, only, budget, visit),
        (_, Config::Path(p)) => path_successors(p, t, gamma, mode, only, budget, visit),
        _ => Err(Error::Precondition(format!("configuration is not in {gamma}"))),
    }
}

fn path_successors(
    c: &PathConfig,
    t: u32,
    gamma: Variation,
    mode: Mode,
    only: Option<Position>,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    let (r, s) = (c.r(), c.s());
    let mut done = BTreeSet::new();
    for u in r..=s {
        let v = c.p(u);
        if only.is_some_and(|o| o != v) || u.unsigned_abs() > t {
            continue;
        }
        let (a, b) = window(u, t, r, s)?;
        if !done.insert((a, b)) {
            continue;
        }
        if path_window_successors(c, a, b, t, gamma, mode, v, budget, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

#[allow(clippy::too_many_arguments)]
fn path_window_successors(
    c: &PathConfig,
    a: i32,
    b: i32,
    t: u32,
    gamma: Variation,
    mode: Mode,
    v: Position,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    let limit = t as i32 + 1;
    let mut board = Board::new(limit + 1);
    let lo = if a > c.r() { a - 1 } else { a };
    let hi = if b < c.s() { b + 1 } else { b };
    for k in lo..=hi {
        board.set(c.p(k), true);
    }
    let core: Vec<Position> = (a..=b).map(|k| c.p(k)).collect();
    let left_stub = (a > c.r()).then(|| c.p(a - 1));
    let right_stub = (b < c.s()).then(|| c.p(b + 1));
    // walk lengths (stub included) that put the far end at index -(t+1) or t+1
    let left_max = (limit + a) as usize;
    let right_max = (limit - b) as usize;
    let build = |x0: &[Position], x1: &[Position]| -> Config {
        let mut cells: Vec<Position> = x0.iter().rev().copied().collect();
        let origin = cells.len() + (-a) as usize;
        cells.extend(core.iter().copied());
        cells.extend(x1.iter().copied());
        Config::Path(PathConfig::from_cells(&cells, origin).expect("extension keeps the path valid"))
    };
    let stub_only = |s: Option<Position>| s.map(|p| vec![p]).unwrap_or_default();

    if mode == Mode::Search {
        if let Some(stub) = left_stub {
            let w = longest_walk(&mut board, stub, limit, left_max);
            if w.len() >= left_max {
                let cfg = build(&w, &stub_only(right_stub));
                if gamma.member(&cfg) {
                    budget.charge()?;
                    if visit(cfg, v).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        if let Some(stub) = right_stub {
            let w = longest_walk(&mut board, stub, limit, right_max);
            if w.len() >= right_max {
                let cfg = build(&stub_only(left_stub), &w);
                if gamma.member(&cfg) {
                    budget.charge()?;
                    if visit(cfg, v).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
    }

    let mut lefts: Vec<Vec<Position>> = Vec::new();
    match left_stub {
        None => lefts.push(Vec::new()),
        Some(stub) => {
            let _ = for_each_walk(&mut board, stub, left_max, limit, &mut |w| {
                lefts.push(w.to_vec());
                ControlFlow::Continue(())
            });
        }
    }
    for x0 in &lefts {
        for &p in x0.iter().skip(1) {
            board.set(p, true);
        }
        let mut rights: Vec<Vec<Position>> = Vec::new();
        match right_stub {
            None => rights.push(Vec::new()),
            Some(stub) => {
                let _ = for_each_walk(&mut board, stub, right_max, limit, &mut |w| {
                    rights.push(w.to_vec());
                    ControlFlow::Continue(())
                });
            }
        }
        for &p in x0.iter().skip(1) {
            board.set(p, false);
        }
        for x1 in &rights {
            let cfg = build(x0, x1);
            if gamma.member(&cfg) {
                budget.charge()?;
                if visit(cfg, v).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn line_successors(
    c: &Config,
    t: u32,
    only: Option<Position>,
    budget: &Budget,
    visit: &mut Visit<'_>,
) -> Result<ControlFlow<()>, Error> {
    let (la, lb) = line_ab(c).ok_or_else(|| Error::Precondition("configuration is not in line-ab".into()))?;
    let (r, s) = (-(la as i32), lb as i32);
    let limit = t as i32 + 1;
    let mut done = BTreeSet::new();
    for u in r..=s {
        let v = Position::new(u, 0);
        if only.is_some_and(|o| o != v) || u.unsigned_abs() > t {
            continue;
        }
        let (a, b) = window(u, t, r, s)?;
        if !done.insert((a, b)) {
            continue;
        }
        let lefts: Vec<i32> = if a > r { (1 - a..=limit).collect() } else { vec![-a] };
        let rights: Vec<i32> = if b < s { (b + 1..=limit).collect() } else { vec![b] };
        for &na in &lefts {
            for &nb in &rights {
                if na <= nb && nb <= na + 2 && na.max(nb) <= limit {
                    budget.charge()?;
                    let cfg = Config::Path(PathConfig::line(na as usize, nb as usize));
                    if visit(cfg, v).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn check_member(c: &Config, gamma: Variation) -> Result<(), Error> {
    if gamma.member(c) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("configuration is not in {gamma}")))
    }
}

/// All C' in the variation with C ≡'_t C' and radius at most t + 1, built
/// from the consistent extensions of each distinct window.
pub fn equiv_step_path(c: &Config, t: u32, gamma: Variation, limits: &Limits) -> Result<Vec<Config>, Error> {
    check_member(c, gamma)?;
    if !gamma.is_path_shaped() {
        return Err(Error::Precondition("variation is not path-shaped".into()));
    }
    if radius(c) > t {
        return Err(Error::Precondition("radius exceeds t".into()));
    }
    let budget = Budget::new(limits);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let _ = successors(c, t, gamma, Mode::All, None, &budget, &mut |d, _| {
        if seen.insert(d.canonical_key()) {
            out.push(d);
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn is_safe(c: &Config, t: u32, gamma: Variation, limits: &Limits) -> Result<Safeness, Error> {
    check_member(c, gamma)?;
    if radius(c) > t {
        return Ok(Safeness::Safe(SafenessChain { t, configs: vec![c.clone()], links: Vec::new() }));
    }
    let budget = Budget::new(limits);
    let mut nodes: Vec<(Config, Option<(usize, Position)>)> = vec![(c.clone(), None)];
    let mut index = HashMap::from([(c.canonical_key(), 0usize)]);
    let mut k = 0;
    while k < nodes.len() {
        let cur = nodes[k].0.clone();
        let mut found = None;
        let _ = successors(&cur, t, gamma, Mode::Search, None, &budget, &mut |d, v| {
            if radius(&d) > t {
                found = Some((d, v));
                return ControlFlow::Break(());
            }
            let key = d.canonical_key();
            if let Entry::Vacant(e) = index.entry(key) {
                e.insert(nodes.len());
                nodes.push((d, Some((k, v))));
            }
            ControlFlow::Continue(())
        })?;
        if let Some((d, v)) = found {
            let mut configs = vec![d];
            let mut links = vec![v];
            let mut at = k;
            loop {
                configs.push(nodes[at].0.clone());
                match nodes[at].1 {
                    Some((parent, link)) => {
                        links.push(link);
                        at = parent;
                    }
                    None => break,
                }
            }
            configs.reverse();
            links.reverse();
            return Ok(Safeness::Safe(SafenessChain { t, configs, links }));
        }
        k += 1;
    }
    Ok(Safeness::Unsafe { class: nodes.into_iter().map(|(c, _)| c).collect() })
}

/// The class of `c` under ≡_t, for an unsafe t.
pub fn equivalence_class(c: &Config, t: u32, gamma: Variation, limits: &Limits) -> Result<Vec<Config>, Error> {
    match is_safe(c, t, gamma, limits)? {
        Safeness::Unsafe { class } => Ok(class),
        Safeness::Safe(_) => Err(Error::Precondition(format!("time {t} is safe, the class is unbounded"))),
    }
}

/// Smallest unsafe t, scanning t = 0, 1, 2, ... without assuming that unsafe
/// times are upward closed.
pub fn mft_localmap(c: &Config, gamma: Variation, limits: &Limits) -> Result<MftResult, Error> {
    check_member(c, gamma)?;
    let bound = gamma.firing_upper_bound(c);
    let mut last_chain = None;
    for t in 0..=bound {
        match is_safe(c, t, gamma, limits)? {
            Safeness::Safe(chain) => last_chain = Some(chain),
            Safeness::Unsafe { class } => {
                return Ok(MftResult {
                    value: t,
                    method: Method::Localmap,
                    witness: Witness::Search { chain: last_chain, class_size: class.len() },
                })
            }
        }
    }
    Err(Error::Internal(format!("no unsafe time up to the bound {bound}")))
}

/// Safeness decided on local maps instead of configurations: starting from
/// ai(v, t, C), alternate between configurations realizing a local map and
/// the local maps of their other nodes, until a quiescent node shows up.
pub fn ai_is_safe(c: &Config, v: Position, t: u32, gamma: Variation, limits: &Limits) -> Result<bool, Error> {
    check_member(c, gamma)?;
    let start = available_info(c, v, t)?;
    if start.is_quiescent() {
        return Ok(true);
    }
    let budget = Budget::new(limits);
    let mut seen: HashSet<AvailableInfo> = HashSet::from([start]);
    let mut queue = VecDeque::from([(c.clone(), v)]);
    while let Some((rep, node)) = queue.pop_front() {
        let mut realizations = Vec::new();
        let mut quiescent = false;
        let _ = successors(&rep, t, gamma, Mode::Search, Some(node), &budget, &mut |d, _| {
            if radius(&d) > t {
                quiescent = true;
                return ControlFlow::Break(());
            }
            realizations.push(d);
            ControlFlow::Continue(())
        })?;
        if quiescent {
            return Ok(true);
        }
        for d in realizations {
            for w in d.positions() {
                let info = available_info(&d, w, t)?;
                if info.is_quiescent() {
                    return Ok(true);
                }
                if seen.insert(info) {
                    queue.push_back((d.clone(), w));
                }
            }
        }
    }
    Ok(false)
}
