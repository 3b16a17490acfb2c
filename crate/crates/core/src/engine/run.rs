use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::community::create_population;
use super::phases::{
    collective_motion_phase, echolocation_phase, exploration_jump, hunting_phase, Tracker,
};
use super::{AlgorithmParams, PhaseBudgets, PopulationShape, TabooList};
use crate::seed::rng_from_seed;
use crate::{Result, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Motion,
    Echolocation,
    Hunting,
    Exploration,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Motion => "motion",
            Phase::Echolocation => "echolocation",
            Phase::Hunting => "hunting",
            Phase::Exploration => "exploration",
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one seeded solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<P> {
    pub success: bool,
    pub best_position: P,
    pub best_fitness: f64,
    pub iterations_used: usize,
    /// Phase in which the run stopped: where the optimum was found, or the
    /// last phase executed when the budget ran out.
    pub phase_reached: Phase,
    pub wall_time: f64,
    pub seed: u64,
    /// Best-ever fitness after every population evaluation.
    pub fitness_trace: Vec<f64>,
    /// Position updates made inside phase rounds.
    pub position_updates: u64,
    /// Exploration jumps that fell back to a taboo candidate.
    pub taboo_saturations: usize,
}

impl<P> RunResult<P> {
    /// Equality on everything but wall time.
    pub fn same_outcome(&self, other: &Self) -> bool
    where
        P: PartialEq,
    {
        self.success == other.success
            && self.best_position == other.best_position
            && self.best_fitness.to_bits() == other.best_fitness.to_bits()
            && self.iterations_used == other.iterations_used
            && self.phase_reached == other.phase_reached
            && self.seed == other.seed
            && self.fitness_trace == other.fitness_trace
            && self.position_updates == other.position_updates
            && self.taboo_saturations == other.taboo_saturations
    }
}

/// Runs the full orca search. The seed fully determines every random draw.
pub fn run_aoa<S: SearchSpace>(
    space: &S,
    params: &AlgorithmParams,
    shape: &PopulationShape,
    budgets: &PhaseBudgets,
    seed: u64,
) -> Result<RunResult<S::Position>> {
    params.validate()?;
    shape.validate()?;
    budgets.validate()?;
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut tracker = Tracker::new();
    let mut taboo = TabooList::for_space(space);
    let mut saturations = 0;

    let founder = space.random_position(&mut rng);
    let mut community = create_population(&founder, shape, space, &mut rng)?;
    tracker.observe(&community);

    let mut iterations_used = 0;
    let mut phase = Phase::Motion;
    let mut solved = space.is_optimal(&tracker.best().expect("observed").0);

    for iteration in 1..=budgets.max_iter {
        iterations_used = iteration;
        if solved {
            break;
        }
        phase = Phase::Motion;
        solved = collective_motion_phase(
            &mut community,
            params,
            space,
            budgets.max_motions,
            &mut rng,
            &mut tracker,
        );
        if solved {
            break;
        }
        phase = Phase::Echolocation;
        solved = echolocation_phase(
            &mut community,
            params,
            space,
            budgets.max_echo_motions,
            &mut rng,
            &mut tracker,
        );
        if solved {
            break;
        }
        phase = Phase::Hunting;
        solved = hunting_phase(
            &mut community,
            params,
            space,
            budgets.max_hunt_motions,
            &mut rng,
            &mut tracker,
        );
        if solved {
            break;
        }
        phase = Phase::Exploration;
        let jump = exploration_jump(&community, &mut taboo, space, shape, &mut rng)?;
        saturations += usize::from(jump.saturated);
        community = jump.community;
        tracker.observe(&community);
        solved = community
            .orcas()
            .iter()
            .any(|o| space.is_optimal(&o.position));
    }

    let (best, fitness_trace, position_updates) = tracker.into_parts();
    let (best_position, best_fitness) = best.expect("at least one observation");
    Ok(RunResult {
        success: space.is_optimal(&best_position),
        best_position,
        best_fitness,
        iterations_used,
        phase_reached: phase,
        wall_time: start.elapsed().as_secs_f64(),
        seed,
        fitness_trace,
        position_updates,
        taboo_saturations: saturations,
    })
}
