//! Scalar update rules shared by the phases and the bat baseline.

use std::f64::consts::TAU;

/// Fitness share of one member within a group. Falls back to a uniform share
/// when the whole group has zero fitness.
pub fn fitness_share(fitness: f64, group_sum: f64, group_len: usize) -> f64 {
    if group_sum > 0.0 {
        fitness / group_sum
    } else {
        1.0 / group_len as f64
    }
}

/// Collective-motion velocity: inertia plus pod and clan attraction.
pub fn motion_velocity(
    w0: f64,
    velocity: f64,
    pod_share: f64,
    pod_distance: f64,
    clan_share: f64,
    clan_distance: f64,
) -> f64 {
    w0 * velocity + pod_share * pod_distance + clan_share * clan_distance
}

/// Offset of a traveling wave of amplitude `gamma` at scalar position
/// `projection`, for an orca crossing it at `velocity`.
///
/// The period is one iteration, so the wave length equals the sound speed and
/// the crossing time is `wave_length / |velocity|`. Zero velocity or zero
/// amplitude produce no offset.
pub fn wave_offset(gamma: f64, projection: f64, velocity: f64, sound_speed: f64) -> f64 {
    if velocity == 0.0 || gamma == 0.0 {
        return 0.0;
    }
    let wave_length = sound_speed;
    let crossing_time = wave_length / velocity.abs();
    gamma * (TAU / wave_length * projection - TAU * crossing_time).sin()
}

/// Echolocation frequency for a uniform draw `beta`.
pub fn echo_frequency(f_min: f64, f_max: f64, beta: f64) -> f64 {
    f_min + (f_max - f_min) * beta
}

/// One loudness decay step, clamped at the floor.
pub fn decay_loudness(loudness: f64, delta: f64, a_min: f64) -> f64 {
    (delta * loudness).max(a_min)
}

pub fn echo_velocity(loudness: f64, frequency: f64) -> f64 {
    loudness / frequency
}

/// Signed displacement that puts an orca at `distance` from the circle centre
/// onto the circle of radius `radius`.
pub fn encircle_displacement(distance: f64, radius: f64) -> f64 {
    distance - radius
}

/// Narrowing-circle step with `a = fraction * radius`. Returns the
/// displacement `r - a` and the shrunken radius, floored at zero.
pub fn narrowing_step(radius: f64, fraction: f64) -> (f64, f64) {
    let a = fraction * radius;
    (radius - a, (radius - a).max(0.0))
}

/// Archimedes spiral step for a uniform draw `l`.
pub fn spiral_displacement(l: f64) -> f64 {
    -TAU * l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motion_velocity_arithmetic() {
        assert_eq!(motion_velocity(0.25, 4.0, 0.5, 2.0, 0.25, 4.0), 3.0);
    }

    #[test]
    fn share_normalisation() {
        assert_eq!(fitness_share(3.0, 4.0, 2), 0.75);
        assert_eq!(fitness_share(0.0, 0.0, 4), 0.25);
    }

    #[test]
    fn wave_degenerate_cases() {
        assert_eq!(wave_offset(0.5, 3.0, 0.0, 1481.0), 0.0);
        assert_eq!(wave_offset(0.0, 3.0, 2.0, 1481.0), 0.0);
        // crossing time of exactly one period
        assert!(wave_offset(0.5, 0.0, 1481.0, 1481.0).abs() < 1e-12);
    }

    #[test]
    fn echolocation_arithmetic() {
        assert_eq!(echo_frequency(0.0, 2.0, 0.5), 1.0);
        assert_eq!(decay_loudness(1.0, 0.25, 0.0), 0.25);
        assert_eq!(decay_loudness(0.02, 0.25, 0.01), 0.01);
        assert_eq!(echo_velocity(0.5, 2.0), 0.25);
    }

    #[test]
    fn hunting_arithmetic() {
        assert_eq!(encircle_displacement(3.0, 3.0), 0.0);
        assert_eq!(narrowing_step(2.0, 0.25), (1.5, 1.5));
        assert_eq!(spiral_displacement(0.0), 0.0);
    }
}
