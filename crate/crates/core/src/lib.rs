//! Three-phase orca swarm metaheuristic.
//!
//! The engine ([`engine`]) is generic over a [`SearchSpace`]. Two spaces ship
//! with the crate: bounded real vectors ([`continuous`]) and admissible move
//! sequences through an obstacle grid ([`maze`]). [`maze_io`] reads, writes and
//! generates maze corpora, [`baselines`] holds discrete PSO and bat-algorithm
//! comparison solvers, and [`harness`] runs seeded experiments and sweeps.

pub mod baselines;
pub mod continuous;
pub mod engine;
mod error;
pub mod harness;
pub mod maze;
pub mod maze_io;
pub mod seed;
mod space;

pub use engine::{
    run_aoa, AlgorithmParams, Community, Orca, Phase, PhaseBudgets, PopulationShape, RunResult,
    TabooList,
};
pub use error::{Error, ParseErrorKind, Result};
pub use space::SearchSpace;
