//! Grid geometry: positions, directions, boundary conditions, and the two
//! configuration shapes (paths and regions) with their text format.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Violation};

/// Number of spatial dimensions the algorithms handle.
pub const DIMENSION: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub x: i32,
    pub y: i32,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Position { x, y }
    }

    pub fn step(self, d: Direction) -> Position {
        let (dx, dy) = d.offset();
        Position::new(self.x + dx, self.y + dy)
    }

    /// Neighbors in E, N, W, S order.
    pub fn neighbors(self) -> [Position; 4] {
        Direction::ALL.map(|d| self.step(d))
    }

    pub fn is_adjacent(self, other: Position) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    /// max(|x|, |y|)
    pub fn chebyshev(self) -> i32 {
        self.x.abs().max(self.y.abs())
    }

    /// |x| + |y|
    pub fn manhattan(self) -> i32 {
        self.x.abs() + self.y.abs()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Unit directions, indexed E=0, N=1, W=2, S=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    E,
    N,
    W,
    S,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::E, Direction::N, Direction::W, Direction::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Direction {
        Direction::ALL[i % 4]
    }

    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::E => (1, 0),
            Direction::N => (0, 1),
            Direction::W => (-1, 0),
            Direction::S => (0, -1),
        }
    }

    pub fn opposite(self) -> Direction {
        Direction::from_index(self.index() + 2)
    }

    pub fn letter(self) -> char {
        match self {
            Direction::E => 'E',
            Direction::N => 'N',
            Direction::W => 'W',
            Direction::S => 'S',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        match c {
            'E' => Some(Direction::E),
            'N' => Some(Direction::N),
            'W' => Some(Direction::W),
            'S' => Some(Direction::S),
            _ => None,
        }
    }

    /// Direction of the unit step `from -> to`, if they are adjacent.
    pub fn between(from: Position, to: Position) -> Option<Direction> {
        Direction::ALL.into_iter().find(|&d| from.step(d) == to)
    }
}

/// One of the eight symmetries of the square grid fixing the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    /// Quarter turns counterclockwise, applied after the optional flip.
    pub turns: u8,
    /// Reflection across the x axis.
    pub flip: bool,
}

impl Symmetry {
    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|k| Symmetry { turns: k % 4, flip: k >= 4 })
    }

    pub fn apply_direction(self, d: Direction) -> Direction {
        let i = d.index();
        let i = if self.flip { (4 - i) % 4 } else { i };
        Direction::from_index(i + self.turns as usize)
    }

    pub fn apply(self, p: Position) -> Position {
        let (x, y) = if self.flip { (p.x, -p.y) } else { (p.x, p.y) };
        match self.turns % 4 {
            0 => Position::new(x, y),
            1 => Position::new(-y, x),
            2 => Position::new(-x, -y),
            _ => Position::new(y, -x),
        }
    }
}

/// Neighbor occupancy of a cell, bit `i` set iff the neighbor in direction `i` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoundaryCondition(pub u8);

impl BoundaryCondition {
    pub fn has(self, d: Direction) -> bool {
        self.0 & (1 << d.index()) != 0
    }

    pub fn bits(self) -> [u8; 4] {
        Direction::ALL.map(|d| self.has(d) as u8)
    }

    pub fn of<F: Fn(Position) -> bool>(p: Position, contains: F) -> Self {
        let mut b = 0u8;
        for d in Direction::ALL {
            if contains(p.step(d)) {
                b |= 1 << d.index();
            }
        }
        BoundaryCondition(b)
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.bits();
        write!(f, "({},{},{},{})", b[0], b[1], b[2], b[3])
    }
}

/// A path p_r..p_s through the origin p_0, stored as two move strings.
///
/// `left[k]` is the step from p_{-k} to p_{-k-1}; `right[k]` the step from p_k to p_{k+1}.
#[derive(Debug, Clone)]
pub struct PathConfig {
    left: Vec<Direction>,
    right: Vec<Direction>,
    cells: Vec<Position>,
    index: HashMap<Position, i32>,
}

impl PartialEq for PathConfig {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl Eq for PathConfig {}

impl std::hash::Hash for PathConfig {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.left.hash(state);
        self.right.hash(state);
    }
}

impl PathConfig {
    pub fn from_moves(left: Vec<Direction>, right: Vec<Direction>) -> Result<Self, Error> {
        let c = Self::build(left, right);
        match c.violation() {
            None => Ok(c),
            Some(v) => Err(Error::Invalid(v)),
        }
    }

    /// Builds without validation; `violation` reports problems afterwards.
    pub fn build(left: Vec<Direction>, right: Vec<Direction>) -> Self {
        let mut cells = Vec::with_capacity(left.len() + right.len() + 1);
        let mut p = Position::ORIGIN;
        let mut lefts = Vec::with_capacity(left.len());
        for &d in &left {
            p = p.step(d);
            lefts.push(p);
        }
        lefts.reverse();
        cells.extend(lefts);
        cells.push(Position::ORIGIN);
        p = Position::ORIGIN;
        for &d in &right {
            p = p.step(d);
            cells.push(p);
        }
        let r = -(left.len() as i32);
        let mut index = HashMap::with_capacity(cells.len());
        for (k, &c) in cells.iter().enumerate() {
            index.entry(c).or_insert(r + k as i32);
        }
        PathConfig { left, right, cells, index }
    }

    /// Builds from positions p_r..p_s listed in order, `origin` being the offset of p_0.
    /// Consecutive positions must be adjacent.
    pub fn from_cells(cells: &[Position], origin: usize) -> Result<Self, Error> {
        if cells.get(origin) != Some(&Position::ORIGIN) {
            return Err(Error::Precondition("p_0 must be the origin".into()));
        }
        let step = |a: Position, b: Position| {
            Direction::between(a, b).ok_or_else(|| Error::Precondition(format!("{a} and {b} are not adjacent")))
        };
        let mut left = Vec::with_capacity(origin);
        for k in (1..=origin).rev() {
            left.push(step(cells[k], cells[k - 1])?);
        }
        let mut right = Vec::with_capacity(cells.len() - origin - 1);
        for k in origin..cells.len() - 1 {
            right.push(step(cells[k], cells[k + 1])?);
        }
        Self::from_moves(left, right)
    }

    pub fn singleton() -> Self {
        Self::build(Vec::new(), Vec::new())
    }

    /// Horizontal line p_{-a}..p_b.
    pub fn line(a: usize, b: usize) -> Self {
        Self::build(vec![Direction::W; a], vec![Direction::E; b])
    }

    pub fn left_moves(&self) -> &[Direction] {
        &self.left
    }

    pub fn right_moves(&self) -> &[Direction] {
        &self.right
    }

    pub fn r(&self) -> i32 {
        -(self.left.len() as i32)
    }

    pub fn s(&self) -> i32 {
        self.right.len() as i32
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// p_k.
    pub fn p(&self, k: i32) -> Position {
        self.cells[(k - self.r()) as usize]
    }

    /// Positions p_r..p_s.
    pub fn cells(&self) -> &[Position] {
        &self.cells
    }

    pub fn contains(&self, p: Position) -> bool {
        self.index.contains_key(&p)
    }

    pub fn index_of(&self, p: Position) -> Option<i32> {
        self.index.get(&p).copied()
    }

    pub fn bc(&self, p: Position) -> BoundaryCondition {
        BoundaryCondition::of(p, |q| self.contains(q))
    }

    /// max{-r, s}, which equals the radius of a valid path.
    pub fn radius(&self) -> u32 {
        self.left.len().max(self.right.len()) as u32
    }

    /// The same set traversed in the other direction (hands swapped).
    pub fn reversed(&self) -> Self {
        Self::build(self.right.clone(), self.left.clone())
    }

    pub fn transformed(&self, g: Symmetry) -> Self {
        let map = |v: &[Direction]| v.iter().map(|&d| g.apply_direction(d)).collect();
        Self::build(map(&self.left), map(&self.right))
    }

    /// Orientation-independent key: equal iff the position sets are equal.
    pub fn canonical_key(&self) -> String {
        let a = self.to_string();
        let b = self.reversed().to_string();
        a.min(b)
    }

    /// First violated invariant: duplicates first, then touching pairs, scanning i then j.
    pub fn violation(&self) -> Option<Violation> {
        let r = self.r();
        let n = self.cells.len();
        if self.index.len() != n {
            for a in 0..n {
                for b in a + 1..n {
                    if self.cells[a] == self.cells[b] {
                        return Some(Violation::Duplicate { i: r + a as i32, j: r + b as i32 });
                    }
                }
            }
        }
        for a in 0..n {
            for nb in self.cells[a].neighbors() {
                if let Some(j) = self.index_of(nb) {
                    let i = r + a as i32;
                    if j >= i + 2 {
                        // report the smallest such j for this i
                        let j = (i + 2..=self.s()).find(|&j| self.p(j).is_adjacent(self.cells[a])).unwrap_or(j);
                        return Some(Violation::Touching { i, j });
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for PathConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[Direction]| -> String {
            if v.is_empty() {
                ".".to_string()
            } else {
                v.iter().map(|d| d.letter()).collect()
            }
        };
        write!(f, "PATH {}|{}", side(&self.left), side(&self.right))
    }
}

/// A connected finite set of positions containing the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionConfig {
    cells: BTreeSet<Position>,
}

impl RegionConfig {
    pub fn new(cells: BTreeSet<Position>) -> Result<Self, Error> {
        let c = RegionConfig { cells };
        match c.violation() {
            None => Ok(c),
            Some(v) => Err(Error::Invalid(v)),
        }
    }

    pub fn cells(&self) -> &BTreeSet<Position> {
        &self.cells
    }

    pub fn contains(&self, p: Position) -> bool {
        self.cells.contains(&p)
    }

    pub fn bc(&self, p: Position) -> BoundaryCondition {
        BoundaryCondition::of(p, |q| self.contains(q))
    }

    pub fn violation(&self) -> Option<Violation> {
        if !self.cells.contains(&Position::ORIGIN) {
            return Some(Violation::MissingOrigin);
        }
        let reached = bfs(Position::ORIGIN, |q| self.cells.contains(&q));
        if let Some(&p) = self.cells.iter().find(|p| !reached.contains_key(p)) {
            return Some(Violation::Disconnected(p));
        }
        None
    }
}

impl fmt::Display for RegionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "REG ")?;
        for (k, p) in self.cells.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Config {
    Path(PathConfig),
    Region(RegionConfig),
}

impl Config {
    pub fn contains(&self, p: Position) -> bool {
        match self {
            Config::Path(c) => c.contains(p),
            Config::Region(c) => c.contains(p),
        }
    }

    pub fn positions(&self) -> Vec<Position> {
        match self {
            Config::Path(c) => c.cells().to_vec(),
            Config::Region(c) => c.cells().iter().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Config::Path(c) => c.len(),
            Config::Region(c) => c.cells().len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_path(&self) -> Option<&PathConfig> {
        match self {
            Config::Path(c) => Some(c),
            Config::Region(_) => None,
        }
    }

    pub fn violation(&self) -> Option<Violation> {
        match self {
            Config::Path(c) => c.violation(),
            Config::Region(c) => c.violation(),
        }
    }

    /// Key equal for equal position sets.
    pub fn canonical_key(&self) -> String {
        match self {
            Config::Path(c) => c.canonical_key(),
            Config::Region(c) => c.to_string(),
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Config::Path(c) => c.fmt(f),
            Config::Region(c) => c.fmt(f),
        }
    }
}

fn bfs<F: Fn(Position) -> bool>(start: Position, inside: F) -> HashMap<Position, u32> {
    let mut dist = HashMap::new();
    dist.insert(start, 0);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for q in p.neighbors() {
            if inside(q) && !dist.contains_key(&q) {
                dist.insert(q, d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

pub fn boundary_condition(c: &Config, p: Position) -> Result<BoundaryCondition, Error> {
    if !c.contains(p) {
        return Err(Error::NotInConfig(p));
    }
    Ok(BoundaryCondition::of(p, |q| c.contains(q)))
}

/// Distances inside `c` from `p` to every cell.
pub fn distances_from(c: &Config, p: Position) -> Result<HashMap<Position, u32>, Error> {
    if !c.contains(p) {
        return Err(Error::NotInConfig(p));
    }
    Ok(bfs(p, |q| c.contains(q)))
}

pub fn distance(c: &Config, p: Position, q: Position) -> Result<u32, Error> {
    if !c.contains(q) {
        return Err(Error::NotInConfig(q));
    }
    distances_from(c, p)?.get(&q).copied().ok_or_else(|| Error::Internal(format!("{q} unreachable from {p}")))
}

pub fn radius(c: &Config) -> u32 {
    match c {
        Config::Path(p) => p.radius(),
        Config::Region(_) => bfs(Position::ORIGIN, |q| c.contains(q)).values().copied().max().unwrap_or(0),
    }
}

/// Rows from top to bottom; 'G' marks the origin, '#' other cells, '.' empty.
pub fn render_ascii(c: &Config) -> String {
    let cells = c.positions();
    let (x0, x1) = (cells.iter().map(|p| p.x).min().unwrap(), cells.iter().map(|p| p.x).max().unwrap());
    let (y0, y1) = (cells.iter().map(|p| p.y).min().unwrap(), cells.iter().map(|p| p.y).max().unwrap());
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let p = Position::new(x, y);
            out.push(if p == Position::ORIGIN {
                'G'
            } else if c.contains(p) {
                '#'
            } else {
                '.'
            });
        }
        if y > y0 {
            out.push('\n');
        }
    }
    out
}

/// Parses one record; a single trailing newline is accepted.
pub fn parse_config(text: &str) -> Result<Config, Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    if let Some(rest) = line.strip_prefix("PATH ") {
        parse_path(rest, 5).map(Config::Path)
    } else if let Some(rest) = line.strip_prefix("REG ") {
        parse_region(rest, 4).map(Config::Region)
    } else {
        Err(syntax(0, "expected `PATH ` or `REG `"))
    }
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Syntax { position, message: message.to_string() }
}

fn parse_moves(s: &str, offset: usize) -> Result<Vec<Direction>, Error> {
    if s == "." {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(syntax(offset, "empty move string (use `.`)"));
    }
    s.char_indices()
        .map(|(k, ch)| Direction::from_letter(ch).ok_or_else(|| syntax(offset + k, "expected one of E, N, W, S")))
        .collect()
}

fn parse_path(s: &str, offset: usize) -> Result<PathConfig, Error> {
    let bar = s.find('|').ok_or_else(|| syntax(offset + s.len(), "expected `|`"))?;
    let left = parse_moves(&s[..bar], offset)?;
    let right = parse_moves(&s[bar + 1..], offset + bar + 1)?;
    PathConfig::from_moves(left, right)
}

fn parse_int(s: &str, offset: usize) -> Result<i32, Error> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && !(digits.len() > 1 && digits.starts_with('0'))
        && s != "-0";
    if !canonical {
        return Err(syntax(offset, "expected a canonical integer"));
    }
    s.parse().map_err(|_| syntax(offset, "integer out of range"))
}

fn parse_region(s: &str, offset: usize) -> Result<RegionConfig, Error> {
    let mut cells = Vec::new();
    let mut pos = 0;
    let bytes = s.as_bytes();
    loop {
        if bytes.get(pos) != Some(&b'(') {
            return Err(syntax(offset + pos, "expected `(`"));
        }
        let close = s[pos..].find(')').ok_or_else(|| syntax(offset + s.len(), "expected `)`"))? + pos;
        let inner = &s[pos + 1..close];
        let comma = inner.find(',').ok_or_else(|| syntax(offset + pos + 1, "expected `x,y`"))?;
        let x = parse_int(&inner[..comma], offset + pos + 1)?;
        let y = parse_int(&inner[comma + 1..], offset + pos + 2 + comma)?;
        cells.push(Position::new(x, y));
        pos = close + 1;
        match bytes.get(pos) {
            None => break,
            Some(b',') => pos += 1,
            Some(_) => return Err(syntax(offset + pos, "expected `,` or end of record")),
        }
    }
    if cells.windows(2).any(|w| w[0] >= w[1]) {
        return Err(syntax(offset, "cells must be strictly sorted by (x,y)"));
    }
    RegionConfig::new(cells.into_iter().collect())
}
