//! Generic three-phase orca search.
//!
//! One global iteration runs collective motion, then echolocation, then
//! carousel hunting, and finally an exploration jump that replaces the whole
//! community. Each later step only runs while no optimal position is known.

mod community;
pub mod equations;
mod params;
mod phases;
mod run;
mod taboo;

pub use community::{create_population, Community, Orca};
pub use params::{AlgorithmParams, PhaseBudgets, PopulationShape};
pub use phases::{
    collective_motion_phase, echolocation_phase, exploration_jump, hunting_phase,
    wave_perturbation, Exploration, Tracker,
};
pub use run::{run_aoa, Phase, RunResult};
pub use taboo::TabooList;
