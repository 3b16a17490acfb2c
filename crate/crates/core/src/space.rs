use std::fmt::Debug;

use rand::Rng;

use crate::engine::PopulationShape;
use crate::Result;

/// A problem domain the orca engine can search.
///
/// Positions are opaque to the engine. Everything it needs (scalar distances,
/// signed scalar moves, random restarts, the long exploration jump) goes
/// through this trait.
///
/// `fitness` is a quality score, higher is better, finite and non-negative.
/// Minimisation domains expose `1 / (1 + objective)`.
pub trait SearchSpace {
    type Position: Clone + Debug + Send + Sync;

    /// Non-negative, symmetric, zero on equal positions.
    fn distance(&self, x: &Self::Position, y: &Self::Position) -> f64;

    /// Moves `x` by the signed scalar displacement `k`. Positive values move
    /// towards `anchor` (or grow the position, for spaces without geometry),
    /// negative values move away (or shrink it).
    fn translate<R: Rng + ?Sized>(
        &self,
        x: &Self::Position,
        k: f64,
        anchor: &Self::Position,
        rng: &mut R,
    ) -> Self::Position;

    fn random_position<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Position;

    /// The long exploration move launched from a clan matriarch.
    fn max_distance_jump<R: Rng + ?Sized>(&self, x: &Self::Position, rng: &mut R)
        -> Self::Position;

    fn fitness(&self, x: &Self::Position) -> f64;

    fn is_optimal(&self, x: &Self::Position) -> bool;

    fn positions_equal(&self, x: &Self::Position, y: &Self::Position, tolerance: f64) -> bool;

    /// Equality threshold used by the exploration taboo list.
    fn taboo_tolerance(&self) -> f64;

    fn validate(&self, x: &Self::Position) -> Result<()>;

    /// Applies `offset(p)` to every scalar projection `p` of the position.
    /// Used by the wave perturbation.
    fn shift_projections<R: Rng + ?Sized>(
        &self,
        x: &Self::Position,
        offset: &dyn Fn(f64) -> f64,
        rng: &mut R,
    ) -> Self::Position;

    /// Clan-derivation hook: every member of a fresh community, in
    /// (clan, pod, individual) order, grown from `seed`.
    fn derive_population<R: Rng + ?Sized>(
        &self,
        seed: &Self::Position,
        shape: &PopulationShape,
        rng: &mut R,
    ) -> Vec<Self::Position>;

    /// Lower bound for the hunting radius range.
    fn min_hunt_radius(&self) -> f64 {
        0.0
    }

    /// The statistic reported as "solution size" by the harness.
    fn solution_size(&self, x: &Self::Position) -> f64;
}
