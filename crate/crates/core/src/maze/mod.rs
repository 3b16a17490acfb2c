//! Maze path search space.
//!
//! A position is an admissible move sequence from the entrance. The engine's
//! scalar moves map onto path arithmetic: a positive displacement appends
//! random moves, a negative one drops trailing moves.

mod grid;
mod path;
mod space;

pub use grid::{Cell, MazeGrid, Move};
pub use path::{Extension, SolutionPath};
pub use space::{build_maze_population, cut_points, manhattan_fitness, MazeSpace};
