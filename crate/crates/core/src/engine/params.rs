use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Clans x pods per clan x individuals per pod.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationShape {
    pub clans: usize,
    pub pods_per_clan: usize,
    pub individuals_per_pod: usize,
}

impl PopulationShape {
    pub fn new(clans: usize, pods_per_clan: usize, individuals_per_pod: usize) -> Result<Self> {
        let shape = PopulationShape {
            clans,
            pods_per_clan,
            individuals_per_pod,
        };
        shape.validate()?;
        Ok(shape)
    }

    /// The tuned configuration: 4 clans, 2 pods, 5 individuals.
    pub const fn tuned() -> Self {
        PopulationShape {
            clans: 4,
            pods_per_clan: 2,
            individuals_per_pod: 5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let levels_ok = self.clans > 0 && self.pods_per_clan > 0 && self.individuals_per_pod > 0;
        if !levels_ok || self.size() < 2 {
            return Err(Error::InvalidShape {
                clans: self.clans,
                pods: self.pods_per_clan,
                individuals: self.individuals_per_pod,
            });
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.clans * self.pods_per_clan * self.individuals_per_pod
    }

    pub fn pods(&self) -> usize {
        self.clans * self.pods_per_clan
    }

    pub fn clan_size(&self) -> usize {
        self.pods_per_clan * self.individuals_per_pod
    }

    pub fn index(&self, clan: usize, pod: usize, individual: usize) -> usize {
        (clan * self.pods_per_clan + pod) * self.individuals_per_pod + individual
    }

    /// Global pod number of a flat orca index.
    pub fn pod_of(&self, index: usize) -> usize {
        index / self.individuals_per_pod
    }

    pub fn clan_of(&self, index: usize) -> usize {
        index / self.clan_size()
    }
}

impl std::fmt::Display for PopulationShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}x{}x{}",
            self.clans, self.pods_per_clan, self.individuals_per_pod
        )
    }
}

/// Iteration limits for the global loop and each phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseBudgets {
    pub max_iter: usize,
    pub max_motions: usize,
    pub max_echo_motions: usize,
    pub max_hunt_motions: usize,
}

impl PhaseBudgets {
    pub fn new(
        max_iter: usize,
        max_motions: usize,
        max_echo_motions: usize,
        max_hunt_motions: usize,
    ) -> Result<Self> {
        let budgets = PhaseBudgets {
            max_iter,
            max_motions,
            max_echo_motions,
            max_hunt_motions,
        };
        budgets.validate()?;
        Ok(budgets)
    }

    /// Tuned limits (5, 50, 30, 30), 550 inner rounds in total.
    pub const fn tuned() -> Self {
        PhaseBudgets {
            max_iter: 5,
            max_motions: 50,
            max_echo_motions: 30,
            max_hunt_motions: 30,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("max_iter", self.max_iter),
            ("max_motions", self.max_motions),
            ("max_echo_motions", self.max_echo_motions),
            ("max_hunt_motions", self.max_hunt_motions),
        ] {
            if value == 0 {
                return Err(Error::param(name, "must be positive"));
            }
        }
        Ok(())
    }

    pub fn rounds_per_iteration(&self) -> usize {
        self.max_motions + self.max_echo_motions + self.max_hunt_motions
    }

    /// `max_iter * (max_motions + max_echo_motions + max_hunt_motions)`.
    pub fn total_inner(&self) -> usize {
        self.max_iter * self.rounds_per_iteration()
    }
}

/// Empirical parameters of the three phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmParams {
    /// Inertia weight of the collective-motion velocity.
    pub w0: f64,
    /// Wave amplitude.
    pub gamma: f64,
    /// Loudness decay factor.
    pub delta: f64,
    /// Probability of the narrowing-circle move during hunting.
    pub alpha: f64,
    pub f_min: f64,
    pub f_max: f64,
    /// Loudness at echolocation entry.
    pub a0: f64,
    /// Loudness floor.
    pub a_min: f64,
    /// Wave propagation speed. The wave period is one iteration, so this is
    /// also the wave length.
    pub sound_speed: f64,
}

impl AlgorithmParams {
    pub const SOUND_SPEED: f64 = 1481.0;

    pub const fn tuned() -> Self {
        AlgorithmParams {
            w0: 0.25,
            gamma: 0.5,
            delta: 0.25,
            alpha: 0.75,
            f_min: 0.0,
            f_max: 2.0,
            a0: 1.0,
            a_min: 0.01,
            sound_speed: Self::SOUND_SPEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.w0,
            self.gamma,
            self.delta,
            self.alpha,
            self.f_min,
            self.f_max,
            self.a0,
            self.a_min,
            self.sound_speed,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::param("params", "all values must be finite"));
        }
        if !(0.0..=1.0).contains(&self.w0) {
            return Err(Error::param("w0", "must lie in [0, 1]"));
        }
        if self.gamma <= 0.0 {
            return Err(Error::param("gamma", "must be positive"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::param("delta", "must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::param("alpha", "must lie in [0, 1]"));
        }
        if self.f_min >= self.f_max {
            return Err(Error::param("f_min", "must be below f_max"));
        }
        if self.f_max <= 0.0 {
            return Err(Error::param("f_max", "must be positive"));
        }
        if self.a0 <= 0.0 {
            return Err(Error::param("a0", "must be positive"));
        }
        if self.a_min < 0.0 || self.a_min >= self.a0 {
            return Err(Error::param("a_min", "must lie in [0, a0)"));
        }
        if self.sound_speed <= 0.0 {
            return Err(Error::param("sound_speed", "must be positive"));
        }
        Ok(())
    }
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        Self::tuned()
    }
}
