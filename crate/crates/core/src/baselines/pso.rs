use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::resolve;
use crate::engine::{Phase, RunResult, Tracker};
use crate::seed::rng_from_seed;
use crate::{Error, Result, SearchSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Defaults to the tuned orca population size.
    pub swarm_size: Option<usize>,
    /// Defaults to the tuned orca inner budget.
    pub iterations: Option<usize>,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams {
            inertia: 0.7,
            cognitive: 1.5,
            social: 1.5,
            swarm_size: None,
            iterations: None,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("pso.inertia", self.inertia),
            ("pso.cognitive", self.cognitive),
            ("pso.social", self.social),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, "must be positive"));
            }
        }
        let (n, t) = resolve(self.swarm_size, self.iterations);
        if n < 2 {
            return Err(Error::param("pso.swarm_size", "must be at least 2"));
        }
        if t == 0 {
            return Err(Error::param("pso.iterations", "must be positive"));
        }
        Ok(())
    }

    pub fn swarm_and_iterations(&self) -> (usize, usize) {
        resolve(self.swarm_size, self.iterations)
    }
}

struct Particle<P> {
    position: P,
    fitness: f64,
    velocity: f64,
    best: P,
    best_fitness: f64,
}

fn leader<P>(swarm: &[Particle<P>]) -> usize {
    let mut idx = 0;
    for (i, p) in swarm.iter().enumerate() {
        if p.best_fitness > swarm[idx].best_fitness {
            idx = i;
        }
    }
    idx
}

/// Scalar-velocity particle swarm: each particle is pulled by its own best
/// and the swarm best through `distance`, then moved with `translate`
/// towards the swarm best.
pub fn run_pso<S: SearchSpace>(
    space: &S,
    params: &PsoParams,
    seed: u64,
) -> Result<RunResult<S::Position>> {
    params.validate()?;
    let (n, iterations) = params.swarm_and_iterations();
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut tracker = Tracker::new();

    let mut swarm: Vec<Particle<S::Position>> = (0..n)
        .map(|_| {
            let position = space.random_position(&mut rng);
            let fitness = space.fitness(&position);
            Particle {
                best: position.clone(),
                best_fitness: fitness,
                position,
                fitness,
                velocity: 0.0,
            }
        })
        .collect();
    for p in &swarm {
        tracker.offer(&p.position, p.fitness);
    }
    tracker.log();
    let mut solved = swarm.iter().any(|p| space.is_optimal(&p.position));
    let mut iterations_used = 0;

    for iteration in 1..=iterations {
        iterations_used = iteration;
        if solved {
            break;
        }
        let global = swarm[leader(&swarm)].best.clone();
        for p in swarm.iter_mut() {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            p.velocity = params.inertia * p.velocity
                + params.cognitive * r1 * space.distance(&p.best, &p.position)
                + params.social * r2 * space.distance(&global, &p.position);
            p.position = space.translate(&p.position, p.velocity, &global, &mut rng);
            p.fitness = space.fitness(&p.position);
            if p.fitness > p.best_fitness {
                p.best = p.position.clone();
                p.best_fitness = p.fitness;
            }
            tracker.offer(&p.position, p.fitness);
        }
        tracker.count_round(n);
        tracker.log();
        solved = swarm.iter().any(|p| space.is_optimal(&p.position));
    }

    let (best, fitness_trace, position_updates) = tracker.into_parts();
    let (best_position, best_fitness) = best.expect("swarm observed");
    Ok(RunResult {
        success: space.is_optimal(&best_position),
        best_position,
        best_fitness,
        iterations_used,
        phase_reached: Phase::Motion,
        wall_time: start.elapsed().as_secs_f64(),
        seed,
        fitness_trace,
        position_updates,
        taboo_saturations: 0,
    })
}
