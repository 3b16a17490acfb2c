//! Particle swarm and bat baselines over the same [`SearchSpace`] contract as
//! the orca search, so comparisons share one discretization layer.

mod ba;
mod pso;

pub use ba::{run_ba, BatParams};
pub use pso::{run_pso, PsoParams};

use serde::{Deserialize, Serialize};

use crate::engine::{PhaseBudgets, PopulationShape};

/// Settings of both baselines.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BaselineParams {
    pub pso: PsoParams,
    pub ba: BatParams,
}

/// Swarm size and iteration count that spend the same number of position
/// updates as an orca run with `shape` and `budgets`.
pub fn matched_budget(shape: &PopulationShape, budgets: &PhaseBudgets) -> (usize, usize) {
    (shape.size(), budgets.total_inner())
}

fn resolve(swarm_size: Option<usize>, iterations: Option<usize>) -> (usize, usize) {
    let (n, t) = matched_budget(&PopulationShape::tuned(), &PhaseBudgets::tuned());
    (swarm_size.unwrap_or(n), iterations.unwrap_or(t))
}
