use rand::Rng;

use super::{MazeGrid, SolutionPath};
use crate::engine::PopulationShape;
use crate::{Error, Result, SearchSpace};

/// Clan base lengths cut from an initial path of `sol_size` moves.
///
/// The first clan keeps the whole path. Each following size is
/// `s / (clans - 1) + 1` of the previous size `s`, held strictly below `s`
/// and floored at 1.
pub fn cut_points(sol_size: usize, clans: usize) -> Result<Vec<usize>> {
    if clans < 2 {
        return Err(Error::TooFewClans(clans));
    }
    if sol_size == 0 {
        return Err(Error::param("sol_size", "must be at least 1"));
    }
    let mut sizes = Vec::with_capacity(clans);
    let mut s = sol_size;
    sizes.push(s);
    for _ in 1..clans {
        s = (s / (clans - 1) + 1).min(s.saturating_sub(1)).max(1);
        sizes.push(s);
    }
    Ok(sizes)
}

/// `1 / (1 + manhattan(terminal, exit))`.
pub fn manhattan_fitness(path: &SolutionPath, maze: &MazeGrid) -> f64 {
    1.0 / (1.0 + path.terminal().manhattan(&maze.exit()) as f64)
}

/// Members of a fresh maze community, in (clan, pod, individual) order.
///
/// Clan bases are prefixes of `initial` with [`cut_points`] lengths. Pod
/// bases extend their clan base by `ceil(2L/3)` random moves and individuals
/// extend their pod base by `ceil(L/3)`, where `L` is the initial length.
pub fn build_maze_population<R: Rng + ?Sized>(
    initial: &SolutionPath,
    shape: &PopulationShape,
    maze: &MazeGrid,
    rng: &mut R,
) -> Vec<SolutionPath> {
    let sol_size = initial.len();
    let bases = match (sol_size, shape.clans) {
        (0, c) => vec![0; c],
        (n, 1) => vec![n],
        (n, c) => cut_points(n, c).expect("clans >= 2 and n >= 1"),
    };
    let budget = sol_size.max(1);
    let pod_moves = (2 * budget).div_ceil(3);
    let individual_moves = budget.div_ceil(3);
    let mut out = Vec::with_capacity(shape.size());
    for len in bases {
        let clan_base = initial.prefix(len);
        for _ in 0..shape.pods_per_clan {
            let mut pod_base = clan_base.clone();
            pod_base.extend_random(pod_moves, maze, rng);
            for _ in 0..shape.individuals_per_pod {
                let mut individual = pod_base.clone();
                individual.extend_random(individual_moves, maze, rng);
                out.push(individual);
            }
        }
    }
    out
}

/// The maze as a [`SearchSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazeSpace {
    grid: MazeGrid,
    max_length: usize,
}

impl MazeSpace {
    /// Uses the default cap of `4 * (width + height)` moves.
    pub fn new(grid: MazeGrid) -> Self {
        let max_length = Self::default_max_length(&grid);
        MazeSpace { grid, max_length }
    }

    pub fn with_max_length(grid: MazeGrid, max_length: usize) -> Result<Self> {
        if max_length == 0 {
            return Err(Error::param("max_length", "must be positive"));
        }
        Ok(MazeSpace { grid, max_length })
    }

    pub fn default_max_length(grid: &MazeGrid) -> usize {
        4 * (grid.width() + grid.height())
    }

    pub fn grid(&self) -> &MazeGrid {
        &self.grid
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn empty_path(&self) -> SolutionPath {
        SolutionPath::empty(&self.grid, self.max_length)
    }

    fn shift(&self, x: &SolutionPath, k: f64, rng: &mut (impl Rng + ?Sized)) -> SolutionPath {
        let steps = k.round();
        let mut p = x.clone();
        if steps >= 1.0 {
            p.extend_random(steps.min(self.max_length as f64) as usize, &self.grid, rng);
        } else if steps <= -1.0 {
            p.truncate((-steps).min(self.max_length as f64) as usize);
        }
        p
    }
}

impl SearchSpace for MazeSpace {
    type Position = SolutionPath;

    /// Manhattan distance between the terminal cells.
    fn distance(&self, x: &SolutionPath, y: &SolutionPath) -> f64 {
        x.terminal().manhattan(&y.terminal()) as f64
    }

    /// `round(k)` random moves appended for positive `k`, `round(-k)`
    /// trailing moves dropped for negative `k`. The anchor plays no role.
    fn translate<R: Rng + ?Sized>(
        &self,
        x: &SolutionPath,
        k: f64,
        _anchor: &SolutionPath,
        rng: &mut R,
    ) -> SolutionPath {
        self.shift(x, k, rng)
    }

    /// A random walk from the entrance up to the length cap.
    fn random_position<R: Rng + ?Sized>(&self, rng: &mut R) -> SolutionPath {
        let mut p = self.empty_path();
        p.extend_random(self.max_length, &self.grid, rng);
        p
    }

    /// Keeps a uniformly random prefix of `x` and runs as far as the length
    /// cap allows from there.
    fn max_distance_jump<R: Rng + ?Sized>(&self, x: &SolutionPath, rng: &mut R) -> SolutionPath {
        let keep = rng.random_range(0..=x.len());
        let mut p = x.prefix(keep);
        let room = self.max_length.saturating_sub(p.len());
        p.extend_random(room, &self.grid, rng);
        p
    }

    fn fitness(&self, x: &SolutionPath) -> f64 {
        manhattan_fitness(x, &self.grid)
    }

    fn is_optimal(&self, x: &SolutionPath) -> bool {
        x.terminal() == self.grid.exit()
    }

    /// Same terminal cell and same length.
    fn positions_equal(&self, x: &SolutionPath, y: &SolutionPath, _tolerance: f64) -> bool {
        x.terminal() == y.terminal() && x.len() == y.len()
    }

    fn taboo_tolerance(&self) -> f64 {
        0.0
    }

    fn validate(&self, x: &SolutionPath) -> Result<()> {
        x.check(&self.grid)
    }

    /// The projection of a path is its length.
    fn shift_projections<R: Rng + ?Sized>(
        &self,
        x: &SolutionPath,
        offset: &dyn Fn(f64) -> f64,
        rng: &mut R,
    ) -> SolutionPath {
        self.shift(x, offset(x.len() as f64), rng)
    }

    fn derive_population<R: Rng + ?Sized>(
        &self,
        seed: &SolutionPath,
        shape: &PopulationShape,
        rng: &mut R,
    ) -> Vec<SolutionPath> {
        build_maze_population(seed, shape, &self.grid, rng)
    }

    fn min_hunt_radius(&self) -> f64 {
        1.0
    }

    /// Path length.
    fn solution_size(&self, x: &SolutionPath) -> f64 {
        x.len() as f64
    }
}
