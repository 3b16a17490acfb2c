use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::resolve;
use crate::engine::{equations, Phase, RunResult, Tracker};
use crate::seed::rng_from_seed;
use crate::{Error, Result, SearchSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatParams {
    pub f_min: f64,
    pub f_max: f64,
    pub loudness: f64,
    pub pulse_rate: f64,
    /// Per-round loudness factor.
    pub decay: f64,
    pub loudness_floor: f64,
    pub swarm_size: Option<usize>,
    pub iterations: Option<usize>,
}

impl Default for BatParams {
    fn default() -> Self {
        BatParams {
            f_min: 0.0,
            f_max: 2.0,
            loudness: 1.0,
            pulse_rate: 0.5,
            decay: 0.25,
            loudness_floor: 0.01,
            swarm_size: None,
            iterations: None,
        }
    }
}

impl BatParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f_min >= 0.0 && self.f_min < self.f_max && self.f_max.is_finite()) {
            return Err(Error::param("ba.f_min", "need 0 <= f_min < f_max"));
        }
        if !(self.loudness.is_finite() && self.loudness > 0.0) {
            return Err(Error::param("ba.loudness", "must be positive"));
        }
        if !(self.pulse_rate > 0.0 && self.pulse_rate <= 1.0) {
            return Err(Error::param("ba.pulse_rate", "must lie in (0, 1]"));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::param("ba.decay", "must lie in (0, 1)"));
        }
        if !(self.loudness_floor >= 0.0 && self.loudness_floor < self.loudness) {
            return Err(Error::param(
                "ba.loudness_floor",
                "must lie in [0, loudness)",
            ));
        }
        let (n, t) = resolve(self.swarm_size, self.iterations);
        if n < 2 {
            return Err(Error::param("ba.swarm_size", "must be at least 2"));
        }
        if t == 0 {
            return Err(Error::param("ba.iterations", "must be positive"));
        }
        Ok(())
    }

    pub fn swarm_and_iterations(&self) -> (usize, usize) {
        resolve(self.swarm_size, self.iterations)
    }

    /// Loudness after `rounds` decays from the initial value.
    pub fn loudness_after(&self, rounds: usize) -> f64 {
        (0..rounds).fold(self.loudness, |a, _| {
            equations::decay_loudness(a, self.decay, self.loudness_floor)
        })
    }
}

struct Bat<P> {
    position: P,
    fitness: f64,
    velocity: f64,
    loudness: f64,
}

/// Bat search with scalar velocities. A bat proposes a move from the
/// frequency-scaled distance to the swarm best, or with probability
/// `1 - pulse_rate` a loudness-sized step around that best, and keeps the
/// proposal only if it improves and a draw falls below its loudness.
pub fn run_ba<S: SearchSpace>(
    space: &S,
    params: &BatParams,
    seed: u64,
) -> Result<RunResult<S::Position>> {
    params.validate()?;
    let (n, iterations) = params.swarm_and_iterations();
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut tracker = Tracker::new();

    let mut bats: Vec<Bat<S::Position>> = (0..n)
        .map(|_| {
            let position = space.random_position(&mut rng);
            let fitness = space.fitness(&position);
            Bat {
                position,
                fitness,
                velocity: 0.0,
                loudness: params.loudness,
            }
        })
        .collect();
    for b in &bats {
        tracker.offer(&b.position, b.fitness);
    }
    tracker.log();
    let mut solved = bats.iter().any(|b| space.is_optimal(&b.position));
    let mut iterations_used = 0;

    for iteration in 1..=iterations {
        iterations_used = iteration;
        if solved {
            break;
        }
        let (global, _) = tracker.best().cloned().expect("swarm observed");
        let mean_loudness = bats.iter().map(|b| b.loudness).sum::<f64>() / n as f64;
        for b in bats.iter_mut() {
            let beta: f64 = loop {
                let beta: f64 = rng.random();
                if equations::echo_frequency(params.f_min, params.f_max, beta) > 0.0 {
                    break beta;
                }
            };
            let frequency = equations::echo_frequency(params.f_min, params.f_max, beta);
            b.velocity += frequency * space.distance(&b.position, &global);
            let candidate = if rng.random::<f64>() > params.pulse_rate {
                let eps: f64 = rng.random_range(-1.0..=1.0);
                space.translate(&global, eps * mean_loudness, &global, &mut rng)
            } else {
                space.translate(&b.position, b.velocity, &global, &mut rng)
            };
            let fitness = space.fitness(&candidate);
            if fitness > b.fitness && rng.random::<f64>() < b.loudness {
                b.position = candidate;
                b.fitness = fitness;
            }
            b.loudness = equations::decay_loudness(b.loudness, params.decay, params.loudness_floor);
            tracker.offer(&b.position, b.fitness);
        }
        tracker.count_round(n);
        tracker.log();
        solved = bats.iter().any(|b| space.is_optimal(&b.position));
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
