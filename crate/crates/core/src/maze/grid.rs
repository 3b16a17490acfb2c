use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn manhattan(&self, other: &Cell) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }

    /// The neighbouring cell in direction `mv`, if it has non-negative
    /// coordinates.
    pub fn step(&self, mv: Move) -> Option<Cell> {
        let (dr, dc) = mv.delta();
        Some(Cell {
            row: self.row.checked_add_signed(dr)?,
            col: self.col.checked_add_signed(dc)?,
        })
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Left,
    Right,
    Up,
    Down,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Left, Move::Right, Move::Up, Move::Down];

    /// (row, column) delta. Up decreases the row.
    pub const fn delta(self) -> (isize, isize) {
        match self {
            Move::Left => (0, -1),
            Move::Right => (0, 1),
            Move::Up => (-1, 0),
            Move::Down => (1, 0),
        }
    }

    pub const fn reverse(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
            Move::Up => Move::Down,
            Move::Down => Move::Up,
        }
    }
}

/// Rectangular grid with obstacles, an entrance and an exit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MazeGrid {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    entrance: Cell,
    exit: Cell,
}

impl MazeGrid {
    /// Validated grid. The entrance and exit must be distinct free cells;
    /// see [`MazeGrid::trivial`] for the degenerate single-cell instance.
    pub fn new(
        width: usize,
        height: usize,
        obstacles: impl IntoIterator<Item = Cell>,
        entrance: Cell,
        exit: Cell,
    ) -> Result<Self> {
        let grid = Self::build(width, height, obstacles, entrance, exit)?;
        if entrance == exit {
            return Err(Error::InvalidMaze("entrance and exit coincide".into()));
        }
        Ok(grid)
    }

    /// An instance whose entrance is its exit.
    pub fn trivial(
        width: usize,
        height: usize,
        obstacles: impl IntoIterator<Item = Cell>,
        cell: Cell,
    ) -> Result<Self> {
        Self::build(width, height, obstacles, cell, cell)
    }

    pub fn open(width: usize, height: usize, entrance: Cell, exit: Cell) -> Result<Self> {
        Self::new(width, height, std::iter::empty(), entrance, exit)
    }

    fn build(
        width: usize,
        height: usize,
        obstacles: impl IntoIterator<Item = Cell>,
        entrance: Cell,
        exit: Cell,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidMaze(format!("empty {width}x{height} grid")));
        }
        let mut grid = MazeGrid {
            width,
            height,
            blocked: vec![false; width * height],
            entrance,
            exit,
        };
        for cell in obstacles {
            if !grid.in_bounds(cell) {
                return Err(Error::InvalidMaze(format!("obstacle {cell} out of bounds")));
            }
            let i = grid.offset(cell);
            grid.blocked[i] = true;
        }
        for (name, cell) in [("entrance", entrance), ("exit", exit)] {
            if !grid.in_bounds(cell) {
                return Err(Error::InvalidMaze(format!("{name} {cell} out of bounds")));
            }
            if grid.is_obstacle(cell) {
                return Err(Error::InvalidMaze(format!("{name} {cell} is an obstacle")));
            }
        }
        Ok(grid)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn entrance(&self) -> Cell {
        self.entrance
    }

    pub fn exit(&self) -> Cell {
        self.exit
    }

    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    /// Row-major index of an in-bounds cell.
    pub fn offset(&self, cell: Cell) -> usize {
        cell.row * self.width + cell.col
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width
    }

    pub fn is_obstacle(&self, cell: Cell) -> bool {
        self.blocked[self.offset(cell)]
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        self.in_bounds(cell) && !self.is_obstacle(cell)
    }

    /// The free neighbour reached by `mv`, if any.
    pub fn neighbor(&self, cell: Cell, mv: Move) -> Option<Cell> {
        cell.step(mv).filter(|c| self.is_free(*c))
    }

    pub fn obstacles(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height)
            .flat_map(move |r| (0..self.width).map(move |c| Cell::new(r, c)))
            .filter(|c| self.is_obstacle(*c))
    }

    pub fn obstacle_count(&self) -> usize {
        self.blocked.iter().filter(|b| **b).count()
    }

    /// Same obstacles and exit, different entrance.
    pub fn with_entrance(&self, entrance: Cell) -> Result<Self> {
        if entrance == self.exit {
            return Self::trivial(self.width, self.height, self.obstacles(), entrance);
        }
        Self::new(
            self.width,
            self.height,
            self.obstacles(),
            entrance,
            self.exit,
        )
    }

    /// Free cells reachable from `from` by orthogonal moves (breadth-first
    /// flood fill), as a row-major mask.
    pub fn flood_fill(&self, from: Cell) -> Vec<bool> {
        let mut seen = vec![false; self.cells()];
        if !self.is_free(from) {
            return seen;
        }
        let mut queue = VecDeque::from([from]);
        seen[self.offset(from)] = true;
        while let Some(cell) = queue.pop_front() {
            for mv in Move::ALL {
                if let Some(next) = self.neighbor(cell, mv) {
                    let i = self.offset(next);
                    if !seen[i] {
                        seen[i] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    }

    pub fn exit_reachable(&self) -> bool {
        self.flood_fill(self.entrance)[self.offset(self.exit)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(MazeGrid::open(3, 3, Cell::new(0, 0), Cell::new(2, 2)).is_ok());
        assert!(MazeGrid::open(3, 3, Cell::new(0, 0), Cell::new(0, 0)).is_err());
        assert!(MazeGrid::trivial(3, 3, [], Cell::new(1, 1)).is_ok());
        assert!(MazeGrid::open(3, 3, Cell::new(0, 0), Cell::new(3, 0)).is_err());
        assert!(MazeGrid::new(3, 3, [Cell::new(2, 2)], Cell::new(0, 0), Cell::new(2, 2)).is_err());
    }

    #[test]
    fn neighbours_respect_walls() {
        let g = MazeGrid::new(3, 2, [Cell::new(0, 1)], Cell::new(0, 0), Cell::new(1, 2)).unwrap();
        assert_eq!(g.neighbor(Cell::new(0, 0), Move::Right), None);
        assert_eq!(g.neighbor(Cell::new(0, 0), Move::Up), None);
        assert_eq!(g.neighbor(Cell::new(0, 0), Move::Left), None);
        assert_eq!(
            g.neighbor(Cell::new(0, 0), Move::Down),
            Some(Cell::new(1, 0))
        );
        assert!(g.exit_reachable());
    }

    #[test]
    fn flood_fill_detects_walls() {
        let wall = (0..3).map(|r| Cell::new(r, 1));
        let g = MazeGrid::new(3, 3, wall, Cell::new(0, 0), Cell::new(0, 2)).unwrap();
        assert!(!g.exit_reachable());
    }

    #[test]
    fn moves_reverse() {
        for mv in Move::ALL {
            assert_eq!(mv.reverse().reverse(), mv);
            let (a, b) = mv.delta();
            let (c, d) = mv.reverse().delta();
            assert_eq!((a + c, b + d), (0, 0));
        }
    }
}
