use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Cell, MazeGrid, Move};
use crate::{Error, Result};

/// An admissible move sequence starting at the maze entrance.
///
/// `terminal` caches the cell reached after the last move. Every operation
/// keeps the path admissible: each prefix stays in bounds and off obstacles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionPath {
    moves: Vec<Move>,
    terminal: Cell,
    max_length: usize,
}

/// What one [`SolutionPath::extend_random`] call did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Extension {
    pub appended: usize,
    /// Some appended move retreated from a dead end.
    pub backtracked: bool,
}

struct Visited(Vec<u64>);

impl Visited {
    fn new(cells: usize) -> Self {
        Visited(vec![0; cells.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
}

impl SolutionPath {
    pub fn empty(grid: &MazeGrid, max_length: usize) -> Self {
        SolutionPath {
            moves: Vec::new(),
            terminal: grid.entrance(),
            max_length,
        }
    }

    /// Replays `moves` from the entrance, rejecting inadmissible sequences.
    pub fn from_moves(grid: &MazeGrid, moves: Vec<Move>, max_length: usize) -> Result<Self> {
        if moves.len() > max_length {
            return Err(Error::InvalidPosition(format!(
                "path of length {} exceeds the cap {max_length}",
                moves.len()
            )));
        }
        let mut cell = grid.entrance();
        for (i, &mv) in moves.iter().enumerate() {
            cell = grid.neighbor(cell, mv).ok_or_else(|| {
                Error::InvalidPosition(format!("move {i} ({mv:?}) from {cell} is blocked"))
            })?;
        }
        Ok(SolutionPath {
            moves,
            terminal: cell,
            max_length,
        })
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn terminal(&self) -> Cell {
        self.terminal
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Every cell visited, entrance first.
    pub fn cells(&self, grid: &MazeGrid) -> Vec<Cell> {
        let mut cell = grid.entrance();
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(cell);
        for &mv in &self.moves {
            cell = cell.step(mv).expect("admissible path");
            out.push(cell);
        }
        out
    }

    /// Re-derives admissibility and the cached terminal from scratch.
    pub fn check(&self, grid: &MazeGrid) -> Result<()> {
        let replayed = Self::from_moves(grid, self.moves.clone(), self.max_length)?;
        if replayed.terminal != self.terminal {
            return Err(Error::InvalidPosition(format!(
                "cached terminal {} differs from replayed {}",
                self.terminal, replayed.terminal
            )));
        }
        Ok(())
    }

    /// The first `len` moves.
    pub fn prefix(&self, len: usize) -> SolutionPath {
        let mut p = self.clone();
        p.truncate(self.len().saturating_sub(len));
        p
    }

    /// Appends up to `k` random admissible moves.
    ///
    /// Each step picks uniformly among free neighbours the path has not
    /// visited yet. At a dead end the walk backtracks: it appends the reverse
    /// of the latest forward move, which also counts towards `k`. Stops early
    /// at the length cap or once the exit is reached.
    pub fn extend_random<R: Rng + ?Sized>(
        &mut self,
        k: usize,
        grid: &MazeGrid,
        rng: &mut R,
    ) -> Extension {
        let mut ext = Extension::default();
        if k == 0 || self.terminal == grid.exit() || self.moves.len() >= self.max_length {
            return ext;
        }
        let mut visited = Visited::new(grid.cells());
        // Forward moves of the walk with backtracked excursions cancelled out.
        let mut trail: Vec<Move> = Vec::with_capacity(self.moves.len());
        let mut cell = grid.entrance();
        visited.insert(grid.offset(cell));
        for &mv in &self.moves {
            cell = cell.step(mv).expect("admissible path");
            visited.insert(grid.offset(cell));
            if trail.last() == Some(&mv.reverse()) {
                trail.pop();
            } else {
                trail.push(mv);
            }
        }

        let mut options = [Move::Left; 4];
        while ext.appended < k && self.terminal != grid.exit() && self.moves.len() < self.max_length
        {
            let here = self.terminal;
            let mut n = 0;
            for mv in Move::ALL {
                if let Some(next) = grid.neighbor(here, mv) {
                    if !visited.contains(grid.offset(next)) {
                        options[n] = mv;
                        n += 1;
                    }
                }
            }
            let mv = if n > 0 {
                let mv = options[rng.random_range(0..n)];
                trail.push(mv);
                mv
            } else if let Some(last) = trail.pop() {
                ext.backtracked = true;
                last.reverse()
            } else {
                // Everything reachable is visited: plain random walk.
                for mv in Move::ALL {
                    if grid.neighbor(here, mv).is_some() {
                        options[n] = mv;
                        n += 1;
                    }
                }
                if n == 0 {
                    break;
                }
                let mv = options[rng.random_range(0..n)];
                trail.push(mv);
                mv
            };
            let next = here.step(mv).expect("admissible move");
            visited.insert(grid.offset(next));
            self.moves.push(mv);
            self.terminal = next;
            ext.appended += 1;
        }
        ext
    }

    /// Drops the last `min(k, len)` moves. Returns how many were removed.
    pub fn truncate(&mut self, k: usize) -> usize {
        let k = k.min(self.moves.len());
        for _ in 0..k {
            let mv = self.moves.pop().expect("non-empty");
            self.terminal = self.terminal.step(mv.reverse()).expect("admissible path");
        }
        k
    }

    /// Appends `k - 1` copies of the current move sequence, stopping at the
    /// first inadmissible move, the length cap, or the exit. Returns the
    /// number of moves appended.
    pub fn replicate(&mut self, k: usize, grid: &MazeGrid) -> usize {
        if k <= 1 || self.moves.is_empty() {
            return 0;
        }
        let pattern = self.moves.clone();
        let mut appended = 0;
        'copies: for _ in 1..k {
            for &mv in &pattern {
                if self.moves.len() >= self.max_length || self.terminal == grid.exit() {
                    break 'copies;
                }
                match grid.neighbor(self.terminal, mv) {
                    Some(next) => {
                        self.moves.push(mv);
                        self.terminal = next;
                        appended += 1;
                    }
                    None => break 'copies,
                }
            }
        }
        appended
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use Move::*;

    fn open15() -> MazeGrid {
        MazeGrid::open(15, 15, Cell::new(7, 7), Cell::new(14, 14)).unwrap()
    }

    /// Start at the bottom-left of a 9x9 room so that the worked path is
    /// admissible.
    fn worked_grid() -> MazeGrid {
        MazeGrid::open(9, 9, Cell::new(8, 1), Cell::new(0, 8)).unwrap()
    }

    fn worked_path() -> Vec<Move> {
        vec![Left, Right, Up, Right, Up, Up, Up, Right]
    }

    #[test]
    fn extend_zero_is_identity() {
        let g = open15();
        let mut p = SolutionPath::empty(&g, 100);
        let mut rng = rng_from_seed(0);
        assert_eq!(p.extend_random(0, &g, &mut rng).appended, 0);
        assert!(p.is_empty());
    }

    #[test]
    fn extend_open_grid() {
        let g = open15();
        let mut p = SolutionPath::empty(&g, 100);
        let mut rng = rng_from_seed(1);
        let ext = p.extend_random(5, &g, &mut rng);
        assert_eq!(ext.appended, 5);
        assert_eq!(p.len(), 5);
        p.check(&g).unwrap();
    }

    #[test]
    fn extension_stops_at_exit() {
        let g = MazeGrid::open(3, 1, Cell::new(0, 0), Cell::new(0, 2)).unwrap();
        let mut p = SolutionPath::from_moves(&g, vec![Right, Right], 10).unwrap();
        let mut rng = rng_from_seed(2);
        assert_eq!(p.extend_random(5, &g, &mut rng).appended, 0);
        assert_eq!(p.len(), 2);
        // A corridor forces the walk straight to the exit.
        let mut q = SolutionPath::empty(&g, 10);
        assert_eq!(q.extend_random(9, &g, &mut rng).appended, 2);
        assert_eq!(q.terminal(), g.exit());
    }

    #[test]
    fn extension_respects_cap() {
        let g = open15();
        let mut p = SolutionPath::empty(&g, 4);
        let mut rng = rng_from_seed(3);
        assert_eq!(p.extend_random(10, &g, &mut rng).appended, 4);
    }

    #[test]
    fn dead_end_backtracks() {
        // Entrance at the closed end of a corridor that branches once.
        //  S . #
        //  # . E
        let g = MazeGrid::new(
            3,
            2,
            [Cell::new(0, 2), Cell::new(1, 0)],
            Cell::new(0, 0),
            Cell::new(1, 2),
        )
        .unwrap();
        let mut p = SolutionPath::from_moves(&g, vec![Right], 10).unwrap();
        let mut rng = rng_from_seed(4);
        p.extend_random(4, &g, &mut rng);
        assert_eq!(p.terminal(), g.exit());
        assert_eq!(p.moves(), &[Right, Down, Right]);

        // . S .
        // # # E
        let g = MazeGrid::new(
            3,
            2,
            [Cell::new(1, 0), Cell::new(1, 1)],
            Cell::new(0, 1),
            Cell::new(1, 2),
        )
        .unwrap();
        let mut p = SolutionPath::from_moves(&g, vec![Left], 10).unwrap();
        let ext = p.extend_random(2, &g, &mut rng);
        assert!(ext.backtracked);
        assert_eq!(p.moves(), &[Left, Right, Right]);
        assert_eq!(p.terminal(), Cell::new(0, 2));
        p.check(&g).unwrap();
    }

    #[test]
    fn truncate_cases() {
        let g = worked_grid();
        let full = SolutionPath::from_moves(&g, worked_path(), 50).unwrap();
        let mut p = full.clone();
        assert_eq!(p.truncate(0), 0);
        assert_eq!(p, full);
        assert_eq!(p.truncate(3), 3);
        assert_eq!(p.moves(), &[Left, Right, Up, Right, Up]);
        p.check(&g).unwrap();
        assert_eq!(p.truncate(99), 5);
        assert!(p.is_empty());
        assert_eq!(p.terminal(), g.entrance());
    }

    #[test]
    fn replicate_cases() {
        let g = MazeGrid::open(10, 1, Cell::new(0, 0), Cell::new(0, 9)).unwrap();
        let mut p = SolutionPath::from_moves(&g, vec![Right, Right], 50).unwrap();
        let before = p.clone();
        assert_eq!(p.replicate(1, &g), 0);
        assert_eq!(p, before);
        assert_eq!(p.replicate(3, &g), 4);
        assert_eq!(p.len(), 6);
        p.check(&g).unwrap();

        let g = MazeGrid::open(4, 1, Cell::new(0, 0), Cell::new(0, 3)).unwrap();
        let short = MazeGrid::open(4, 2, Cell::new(0, 0), Cell::new(1, 3)).unwrap();
        let mut p = SolutionPath::from_moves(&short, vec![Right, Right], 50).unwrap();
        // Only one more step fits before the wall.
        assert_eq!(p.replicate(2, &short), 1);
        assert_eq!(p.terminal(), Cell::new(0, 3));
        let mut q = SolutionPath::from_moves(&g, vec![Right], 50).unwrap();
        assert_eq!(q.replicate(5, &g), 2);
        assert_eq!(q.terminal(), g.exit());
    }

    #[test]
    fn rejects_inadmissible_moves() {
        let g = worked_grid();
        assert!(SolutionPath::from_moves(&g, vec![Down], 10).is_err());
        assert!(SolutionPath::from_moves(&g, vec![Up; 3], 2).is_err());
    }

    proptest::proptest! {
        #[test]
        fn extend_then_truncate_restores(seed in 0u64..500, k in 0usize..40, pre in 0usize..20) {
            let g = open15();
            let mut rng = rng_from_seed(seed);
            let mut p = SolutionPath::empty(&g, 60);
            p.extend_random(pre, &g, &mut rng);
            let original = p.clone();
            let ext = p.extend_random(k, &g, &mut rng);
            p.check(&g).unwrap();
            if !ext.backtracked {
                p.truncate(ext.appended);
                proptest::prop_assert_eq!(p, original);
            }
        }
    }
}
