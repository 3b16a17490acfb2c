use rand::seq::SliceRandom;
use rand::Rng;

use crate::maze::{Cell, MazeGrid, Move};
use crate::seed::rng_from_seed;
use crate::{Error, Result};

/// Rejection-resampling limit of [`generate_maze`].
pub const GENERATION_ATTEMPTS: usize = 500;
/// Allowed gap, in percentage points, between target and measured
/// connectivity.
pub const CONNECTIVITY_TOLERANCE: f64 = 5.0;
const CHAIN_TURN_PROBABILITY: f64 = 0.3;

/// Percentage of obstacle cells with at least one orthogonally adjacent
/// obstacle. A grid without obstacles measures 0.
pub fn measure_connectivity(grid: &MazeGrid) -> f64 {
    let mut total = 0usize;
    let mut linked = 0usize;
    for cell in grid.obstacles() {
        total += 1;
        let touching = Move::ALL.iter().any(|&mv| {
            cell.step(mv)
                .is_some_and(|n| grid.in_bounds(n) && grid.is_obstacle(n))
        });
        linked += usize::from(touching);
    }
    if total == 0 {
        0.0
    } else {
        100.0 * linked as f64 / total as f64
    }
}

struct Layout {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    protected: [Cell; 2],
}

impl Layout {
    fn idx(&self, c: Cell) -> usize {
        c.row * self.width + c.col
    }

    fn neighbours(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        Move::ALL
            .into_iter()
            .filter_map(move |mv| c.step(mv))
            .filter(|n| n.row < self.height && n.col < self.width)
    }

    fn placeable(&self, c: Cell) -> bool {
        !self.blocked[self.idx(c)] && !self.protected.contains(&c)
    }

    fn touches_obstacle(&self, c: Cell) -> bool {
        self.neighbours(c).any(|n| self.blocked[self.idx(n)])
    }

    fn block(&mut self, c: Cell) {
        let i = self.idx(c);
        self.blocked[i] = true;
    }

    fn random_cell<R: Rng + ?Sized>(&self, rng: &mut R) -> Cell {
        Cell::new(
            rng.random_range(0..self.height),
            rng.random_range(0..self.width),
        )
    }

    /// Places `count` obstacles as wall segments, so each one touches
    /// another obstacle.
    fn place_linked<R: Rng + ?Sized>(&mut self, count: usize, rng: &mut R) -> bool {
        let max_chain = ((self.width + self.height) / 4).max(3);
        let mut placed = 0;
        let mut tries = 0;
        while placed < count {
            tries += 1;
            if tries > 50 * count + 100 {
                return false;
            }
            let remaining = count - placed;
            if remaining == 1 {
                // A single leftover obstacle has to lean on an existing one.
                let c = self.random_cell(rng);
                if self.placeable(c) && self.touches_obstacle(c) {
                    self.block(c);
                    placed += 1;
                }
                continue;
            }
            let start = self.random_cell(rng);
            if !self.placeable(start) {
                continue;
            }
            let target = rng.random_range(2..=max_chain).min(remaining);
            let mut chain = vec![start];
            self.block(start);
            let mut heading = Move::ALL[rng.random_range(0..4)];
            while chain.len() < target {
                let head = *chain.last().expect("non-empty chain");
                if rng.random::<f64>() < CHAIN_TURN_PROBABILITY {
                    heading = Move::ALL[rng.random_range(0..4)];
                }
                let mut order = Move::ALL;
                order.shuffle(rng);
                let next = std::iter::once(heading)
                    .chain(order)
                    .filter_map(|mv| head.step(mv).map(|n| (mv, n)))
                    .find(|(_, n)| n.row < self.height && n.col < self.width && self.placeable(*n));
                match next {
                    Some((mv, n)) => {
                        heading = mv;
                        self.block(n);
                        chain.push(n);
                    }
                    None => break,
                }
            }
            if chain.len() == 1 && !self.touches_obstacle(start) {
                let i = self.idx(start);
                self.blocked[i] = false;
                continue;
            }
            placed += chain.len();
        }
        true
    }

    /// Places `count` obstacles that touch no other obstacle.
    fn place_isolated<R: Rng + ?Sized>(&mut self, count: usize, rng: &mut R) -> bool {
        let mut candidates: Vec<Cell> = (0..self.height)
            .flat_map(|r| (0..self.width).map(move |c| Cell::new(r, c)))
            .filter(|c| self.placeable(*c) && !self.touches_obstacle(*c))
            .collect();
        candidates.shuffle(rng);
        let mut placed = 0;
        for c in candidates {
            if placed == count {
                break;
            }
            if self.placeable(c) && !self.touches_obstacle(c) {
                self.block(c);
                placed += 1;
            }
        }
        placed == count
    }
}

/// Generates a solvable maze with the entrance in the top-left corner and the
/// exit in the bottom-right one.
///
/// `floor(density * width * height)` obstacles are placed; the share of
/// obstacles touching another one lands within ±5 points of
/// `connectivity_percent`. Linked obstacles are laid as wall segments,
/// the rest as isolated blocks. Layouts are resampled until the measured
/// connectivity is in range and the exit is reachable.
pub fn generate_maze(
    width: usize,
    height: usize,
    connectivity_percent: f64,
    obstacle_density: f64,
    seed: u64,
) -> Result<MazeGrid> {
    if width * height < 2 {
        return Err(Error::param("size", "maze needs at least two cells"));
    }
    if !(0.0..=100.0).contains(&connectivity_percent) {
        return Err(Error::param("connectivity", "must lie in [0, 100]"));
    }
    if !(0.0..1.0).contains(&obstacle_density) {
        return Err(Error::param("density", "must lie in [0, 1)"));
    }
    let entrance = Cell::new(0, 0);
    let exit = Cell::new(height - 1, width - 1);
    let total = (obstacle_density * (width * height) as f64).floor() as usize;
    if total > width * height - 2 {
        return Err(Error::param(
            "density",
            "leaves no room for entrance and exit",
        ));
    }
    let mut linked = (connectivity_percent / 100.0 * total as f64).round() as usize;
    if linked == 1 {
        linked = if connectivity_percent >= 50.0 { 2 } else { 0 };
    }
    let linked = linked.min(total);

    let mut rng = rng_from_seed(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let mut layout = Layout {
            width,
            height,
            blocked: vec![false; width * height],
            protected: [entrance, exit],
        };
        if !layout.place_linked(linked, &mut rng)
            || !layout.place_isolated(total - linked, &mut rng)
        {
            continue;
        }
        let obstacles: Vec<Cell> = (0..height)
            .flat_map(|r| (0..width).map(move |c| Cell::new(r, c)))
            .filter(|c| layout.blocked[layout.idx(*c)])
            .collect();
        let grid = MazeGrid::new(width, height, obstacles, entrance, exit)?;
        let measured = measure_connectivity(&grid);
        if (measured - connectivity_percent).abs() <= CONNECTIVITY_TOLERANCE
            && grid.exit_reachable()
        {
            return Ok(grid);
        }
    }
    Err(Error::InfeasibleMaze {
        width,
        height,
        connectivity: connectivity_percent,
        density: obstacle_density,
        attempts: GENERATION_ATTEMPTS,
    })
}
