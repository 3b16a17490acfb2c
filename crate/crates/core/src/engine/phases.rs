use log::warn;
use rand::Rng;

use super::community::create_population;
use super::equations::{
    decay_loudness, echo_frequency, echo_velocity, encircle_displacement, fitness_share,
    motion_velocity, narrowing_step, spiral_displacement, wave_offset,
};
use super::{AlgorithmParams, Community, PopulationShape, TabooList};
use crate::{Result, SearchSpace};

/// Retries of the exploration jump before the taboo list counts as saturated.
pub const TABOO_RETRY_LIMIT: usize = 100;

/// Best-ever incumbent and per-round bookkeeping for one run.
#[derive(Debug, Clone)]
pub struct Tracker<P> {
    best: Option<(P, f64)>,
    trace: Vec<f64>,
    round_updates: u64,
}

impl<P: Clone> Default for Tracker<P> {
    fn default() -> Self {
        Tracker {
            best: None,
            trace: Vec::new(),
            round_updates: 0,
        }
    }
}

impl<P: Clone> Tracker<P> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offers one candidate; keeps it if strictly better than the incumbent.
    pub fn offer(&mut self, position: &P, fitness: f64) {
        match &self.best {
            Some((_, f)) if *f >= fitness => {}
            _ => self.best = Some((position.clone(), fitness)),
        }
    }

    /// Offers the community's global matriarch and logs the best-ever fitness.
    pub fn observe(&mut self, community: &Community<P>) {
        let best = community.best();
        self.offer(&best.position, best.fitness);
        self.trace.push(self.best_fitness());
    }

    pub fn best(&self) -> Option<&(P, f64)> {
        self.best.as_ref()
    }

    pub fn best_fitness(&self) -> f64 {
        self.best.as_ref().map_or(f64::NEG_INFINITY, |(_, f)| *f)
    }

    /// Best-ever fitness after every observation.
    pub fn trace(&self) -> &[f64] {
        &self.trace
    }

    /// Orca position updates made inside phase rounds.
    pub fn round_updates(&self) -> u64 {
        self.round_updates
    }

    /// Logs the best-ever fitness without a community, for solvers that feed
    /// candidates through [`Tracker::offer`].
    pub(crate) fn log(&mut self) {
        self.trace.push(self.best_fitness());
    }

    pub(crate) fn count_round(&mut self, orcas: usize) {
        self.round_updates += orcas as u64;
    }

    pub(crate) fn into_parts(self) -> (Option<(P, f64)>, Vec<f64>, u64) {
        (self.best, self.trace, self.round_updates)
    }
}

fn any_optimal<S: SearchSpace>(space: &S, community: &Community<S::Position>) -> bool {
    community
        .orcas()
        .iter()
        .any(|o| space.is_optimal(&o.position))
}

/// Closes one phase round: re-evaluated caches are already in place, so this
/// re-derives the matriarchs, records the incumbent and tests optimality.
fn finish_round<S: SearchSpace>(
    space: &S,
    community: &mut Community<S::Position>,
    tracker: &mut Tracker<S::Position>,
) -> bool {
    community.update_matriarchs();
    tracker.count_round(community.len());
    tracker.observe(community);
    any_optimal(space, community)
}

/// Adds a traveling-wave offset to every scalar projection of `position`.
pub fn wave_perturbation<S, R>(
    position: &S::Position,
    velocity: f64,
    gamma: f64,
    sound_speed: f64,
    space: &S,
    rng: &mut R,
) -> S::Position
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    if velocity == 0.0 || gamma == 0.0 {
        return position.clone();
    }
    let offset = move |p: f64| wave_offset(gamma, p, velocity, sound_speed);
    space.shift_projections(position, &offset, rng)
}

/// Social motion towards pod and clan matriarchs, followed by a wave jiggle.
/// Returns `true` as soon as some orca is optimal.
pub fn collective_motion_phase<S, R>(
    community: &mut Community<S::Position>,
    params: &AlgorithmParams,
    space: &S,
    max_motions: usize,
    rng: &mut R,
    tracker: &mut Tracker<S::Position>,
) -> bool
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    let shape = *community.shape();
    for _ in 0..max_motions {
        let pod_anchors = community.pod_matriarch_positions();
        let clan_anchors = community.clan_matriarch_positions();
        let (pod_sums, clan_sums) = community.fitness_sums();
        for (i, orca) in community.orcas_mut().iter_mut().enumerate() {
            let pod = shape.pod_of(i);
            let clan = shape.clan_of(i);
            let pod_distance = space.distance(&pod_anchors[pod], &orca.position);
            let clan_distance = space.distance(&clan_anchors[clan], &orca.position);
            let velocity = motion_velocity(
                params.w0,
                orca.velocity,
                fitness_share(orca.fitness, pod_sums[pod], shape.individuals_per_pod),
                pod_distance,
                fitness_share(orca.fitness, clan_sums[clan], shape.clan_size()),
                clan_distance,
            );
            let moved = space.translate(&orca.position, velocity, &clan_anchors[clan], rng);
            orca.position = wave_perturbation(
                &moved,
                velocity,
                params.gamma,
                params.sound_speed,
                space,
                rng,
            );
            orca.velocity = velocity;
            orca.fitness = space.fitness(&orca.position);
        }
        if finish_round(space, community, tracker) {
            return true;
        }
    }
    false
}

/// Frequency and loudness driven moves with shrinking steps. Loudness is reset
/// to `a0` on entry.
pub fn echolocation_phase<S, R>(
    community: &mut Community<S::Position>,
    params: &AlgorithmParams,
    space: &S,
    max_echo_motions: usize,
    rng: &mut R,
    tracker: &mut Tracker<S::Position>,
) -> bool
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    let shape = *community.shape();
    for orca in community.orcas_mut() {
        orca.loudness = params.a0;
    }
    for _ in 0..max_echo_motions {
        let clan_anchors = community.clan_matriarch_positions();
        for (i, orca) in community.orcas_mut().iter_mut().enumerate() {
            let frequency = loop {
                let f = echo_frequency(params.f_min, params.f_max, rng.random::<f64>());
                if f != 0.0 {
                    break f;
                }
            };
            orca.frequency = frequency;
            orca.loudness = decay_loudness(orca.loudness, params.delta, params.a_min);
            orca.velocity = echo_velocity(orca.loudness, frequency);
            orca.position = space.translate(
                &orca.position,
                orca.velocity,
                &clan_anchors[shape.clan_of(i)],
                rng,
            );
            orca.fitness = space.fitness(&orca.position);
        }
        if finish_round(space, community, tracker) {
            return true;
        }
    }
    false
}

/// Carousel hunting: place every orca on a circle around its clan matriarch,
/// then alternate narrowing-circle and spiral moves.
pub fn hunting_phase<S, R>(
    community: &mut Community<S::Position>,
    params: &AlgorithmParams,
    space: &S,
    max_hunt_motions: usize,
    rng: &mut R,
    tracker: &mut Tracker<S::Position>,
) -> bool
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    let shape = *community.shape();
    let centres = community.clan_matriarch_positions();
    let distances: Vec<f64> = community
        .orcas()
        .iter()
        .enumerate()
        .map(|(i, o)| space.distance(&o.position, &centres[shape.clan_of(i)]))
        .collect();
    let d_max = distances
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .max(space.min_hunt_radius());
    let mut radii = Vec::with_capacity(community.len());
    for (i, orca) in community.orcas_mut().iter_mut().enumerate() {
        let r = rng.random::<f64>() * d_max;
        let k = encircle_displacement(distances[i], r);
        orca.position = space.translate(&orca.position, k, &centres[shape.clan_of(i)], rng);
        orca.fitness = space.fitness(&orca.position);
        radii.push(r);
    }
    community.update_matriarchs();
    tracker.observe(community);
    if any_optimal(space, community) {
        return true;
    }

    for _ in 0..max_hunt_motions {
        let anchors = community.clan_matriarch_positions();
        for (i, orca) in community.orcas_mut().iter_mut().enumerate() {
            let anchor = &anchors[shape.clan_of(i)];
            let k = if rng.random::<f64>() < params.alpha {
                let (step, shrunk) = narrowing_step(radii[i], rng.random::<f64>());
                radii[i] = shrunk;
                step
            } else {
                spiral_displacement(rng.random::<f64>())
            };
            orca.position = space.translate(&orca.position, k, anchor, rng);
            orca.fitness = space.fitness(&orca.position);
        }
        if finish_round(space, community, tracker) {
            return true;
        }
    }
    false
}

/// Result of one exploration jump.
#[derive(Debug, Clone)]
pub struct Exploration<P> {
    pub community: Community<P>,
    pub launch: P,
    /// The taboo list rejected every retry and the last candidate was used.
    pub saturated: bool,
}

/// Sends a random clan matriarch on a long jump, avoiding previous launch
/// points, and builds a new community around the landing position.
pub fn exploration_jump<S, R>(
    community: &Community<S::Position>,
    taboo: &mut TabooList<S::Position>,
    space: &S,
    shape: &PopulationShape,
    rng: &mut R,
) -> Result<Exploration<S::Position>>
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    let clan = rng.random_range(0..community.shape().clans);
    let matriarch = &community.orcas()[community.clan_matriarch(clan)].position;
    let mut candidate = space.max_distance_jump(matriarch, rng);
    let mut retries = 0;
    while taboo.contains(space, &candidate) && retries < TABOO_RETRY_LIMIT {
        candidate = space.max_distance_jump(matriarch, rng);
        retries += 1;
    }
    let saturated = !taboo.insert(space, candidate.clone());
    if saturated {
        warn!("exploration taboo list saturated after {TABOO_RETRY_LIMIT} retries");
    }
    let community = create_population(&candidate, shape, space, rng)?;
    Ok(Exploration {
        community,
        launch: candidate,
        saturated,
    })
}
