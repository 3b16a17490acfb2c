//! Fixtures shared by the criterion benches.

use orca_core::continuous::{ContinuousProblem, ContinuousSpace, Objective};
use orca_core::maze::MazeSpace;
use orca_core::maze_io::generate_maze;
use orca_core::{PhaseBudgets, PopulationShape};

/// A corpus-style maze of the given size and connectivity, fixed seed.
pub fn maze(size: usize, connectivity: f64) -> MazeSpace {
    let grid = generate_maze(size, size, connectivity, 0.25, 7).expect("fixture maze");
    MazeSpace::new(grid)
}

pub fn sphere(dimension: usize) -> ContinuousSpace {
    let problem = ContinuousProblem::cube(Objective::Sphere, dimension, -5.0, 5.0, 1e-2)
        .expect("fixture problem");
    ContinuousSpace::new(problem)
}

/// Tuned population with a short outer loop, so one bench sample stays
/// under a second.
pub fn short_run() -> (PopulationShape, PhaseBudgets) {
    let mut budgets = PhaseBudgets::tuned();
    budgets.max_iter = 2;
    (PopulationShape::tuned(), budgets)
}
