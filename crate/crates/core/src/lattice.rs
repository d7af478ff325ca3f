//! Torus geometry: 1-based positions on an `N x N` periodic lattice, unit moves
//! with wrap-around, the l1 torus metric and the detection predicate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A lattice cell. Coordinates are 1-based and lie in `[1, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: u32,
    pub y: u32,
}

impl Position {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One of the four unit moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
    Right,
    Left,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Right, Direction::Left];

    /// `(dx, dy)` of the move.
    pub const fn offset(self) -> (i32, i32) {
        match self {
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
            Direction::Right => (1, 0),
            Direction::Left => (-1, 0),
        }
    }

    pub const fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }

    /// Position of this direction in [`Direction::ALL`].
    pub const fn index(self) -> usize {
        match self {
            Direction::Up => 0,
            Direction::Down => 1,
            Direction::Right => 2,
            Direction::Left => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Right => "right",
            Direction::Left => "left",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lattice size, detection radius and the searcher's start cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridConfig {
    side: u32,
    vision_radius: u32,
    start: Position,
}

impl GridConfig {
    /// A grid with the searcher starting at `(1,1)`.
    pub fn new(side: u32, vision_radius: u32) -> Result<Self, Error> {
        if side < 2 {
            return Err(Error::InvalidGrid(side));
        }
        // r_v < N/2, compared in integers as 2 r_v < N.
        if 2 * u64::from(vision_radius) >= u64::from(side) {
            return Err(Error::InvalidVisionRadius { radius: vision_radius, side });
        }
        Ok(Self { side, vision_radius, start: Position::new(1, 1) })
    }

    pub fn with_start(mut self, start: Position) -> Result<Self, Error> {
        if !self.contains(start) {
            return Err(Error::PositionOutOfRange { pos: start, side: self.side });
        }
        self.start = start;
        Ok(self)
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn vision_radius(&self) -> u32 {
        self.vision_radius
    }

    pub fn start(&self) -> Position {
        self.start
    }

    pub fn cell_count(&self) -> usize {
        (self.side as usize) * (self.side as usize)
    }

    pub fn contains(&self, pos: Position) -> bool {
        (1..=self.side).contains(&pos.x) && (1..=self.side).contains(&pos.y)
    }

    /// Row-major index of a cell, `(y - 1) * N + (x - 1)`.
    #[inline]
    pub fn index(&self, pos: Position) -> usize {
        debug_assert!(self.contains(pos));
        (pos.y as usize - 1) * self.side as usize + (pos.x as usize - 1)
    }

    /// Inverse of [`GridConfig::index`].
    pub fn position_at(&self, index: usize) -> Position {
        let n = self.side as usize;
        Position::new((index % n) as u32 + 1, (index / n) as u32 + 1)
    }

    /// Neighbors in [`Direction::ALL`] order.
    #[inline]
    pub fn neighbors(&self, pos: Position) -> [Position; 4] {
        Direction::ALL.map(|d| step(pos, d, self))
    }

    /// Every cell in index order.
    pub fn cells(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.cell_count()).map(|i| self.position_at(i))
    }
}

#[inline]
fn wrap_add(coord: u32, delta: i32, side: u32) -> u32 {
    // 1-based -> 0-based, wrap, back to 1-based.
    let zero_based = (i64::from(coord) - 1 + i64::from(delta)).rem_euclid(i64::from(side));
    zero_based as u32 + 1
}

/// Moves one cell in `dir`, wrapping across the periodic boundary.
#[inline]
pub fn step(pos: Position, dir: Direction, cfg: &GridConfig) -> Position {
    let (dx, dy) = dir.offset();
    Position::new(wrap_add(pos.x, dx, cfg.side), wrap_add(pos.y, dy, cfg.side))
}

/// Shortest distance between two coordinates on a ring of `side` cells.
#[inline]
pub fn axis_distance(a: u32, b: u32, side: u32) -> u32 {
    let d = a.abs_diff(b);
    d.min(side - d)
}

/// l1 distance on the torus: the minimum number of unit moves from `a` to `b`.
#[inline]
pub fn torus_l1(a: Position, b: Position, side: u32) -> u32 {
    axis_distance(a.x, b.x, side) + axis_distance(a.y, b.y, side)
}

/// True when the searcher is within the vision radius of the target.
#[inline]
pub fn detected(searcher: Position, target: Position, cfg: &GridConfig) -> bool {
    torus_l1(searcher, target, cfg.side) <= cfg.vision_radius
}

/// Directions whose neighbor is strictly closer to `target` than `pos` is, or,
/// when no move gets closer, those that minimize the resulting distance.
pub fn best_directions(pos: Position, target: Position, cfg: &GridConfig) -> Vec<Direction> {
    let dists = Direction::ALL.map(|d| torus_l1(step(pos, d, cfg), target, cfg.side));
    let best = *dists.iter().min().expect("four directions");
    Direction::ALL.into_iter().filter(|d| dists[d.index()] == best).collect()
}
