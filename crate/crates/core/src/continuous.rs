//! Bounded real-vector search space with sphere and Rastrigin objectives.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::engine::PopulationShape;
use crate::{Error, Result, SearchSpace};

/// Clan bases must be at least this fraction of the box diagonal apart.
pub const CLAN_SEPARATION: f64 = 0.1;
const SEPARATION_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPosition(pub Vec<f64>);

impl RealPosition {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<f64>> for RealPosition {
    fn from(v: Vec<f64>) -> Self {
        RealPosition(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Sphere,
    Rastrigin,
}

impl Objective {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            Objective::Sphere => x.iter().map(|v| v * v).sum(),
            Objective::Rastrigin => {
                10.0 * x.len() as f64
                    + x.iter()
                        .map(|v| v * v - 10.0 * (TAU * v).cos())
                        .sum::<f64>()
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Objective::Sphere => "sphere",
            Objective::Rastrigin => "rastrigin",
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Objective::Sphere),
            "rastrigin" => Ok(Objective::Rastrigin),
            other => Err(Error::param(
                "objective",
                format!("unknown objective {other:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousProblem {
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Objective,
    epsilon: f64,
}

impl ContinuousProblem {
    pub fn new(
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: Objective,
        epsilon: f64,
    ) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::param("dimension", "must be at least 1"));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| l.is_nan() || u.is_nan() || l >= u)
        {
            return Err(Error::param(
                "bounds",
                "lower must be below upper in every coordinate",
            ));
        }
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::param("epsilon", "must be positive"));
        }
        Ok(ContinuousProblem {
            lower,
            upper,
            objective,
            epsilon,
        })
    }

    /// Same bounds in every coordinate.
    pub fn cube(
        objective: Objective,
        dimension: usize,
        lower: f64,
        upper: f64,
        epsilon: f64,
    ) -> Result<Self> {
        Self::new(
            vec![lower; dimension],
            vec![upper; dimension],
            objective,
            epsilon,
        )
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn objective_value(&self, x: &RealPosition) -> f64 {
        self.objective.evaluate(x.coords())
    }

    pub fn fitness(&self, x: &RealPosition) -> f64 {
        1.0 / (1.0 + self.objective_value(x))
    }

    /// Length of the box diagonal.
    pub fn diameter(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l) * (u - l))
            .sum::<f64>()
            .sqrt()
    }

    fn clamp(&self, coords: &mut [f64]) {
        for ((c, l), u) in coords.iter_mut().zip(&self.lower).zip(&self.upper) {
            *c = c.clamp(*l, *u);
        }
    }
}

/// Euclidean distance between two positions of equal dimension.
pub fn euclidean_distance(x: &RealPosition, y: &RealPosition) -> Result<f64> {
    if x.dimension() != y.dimension() {
        return Err(Error::DimensionMismatch {
            expected: x.dimension(),
            found: y.dimension(),
        });
    }
    Ok(norm_of_difference(x.coords(), y.coords()))
}

fn norm_of_difference(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn random_unit<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dimension).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousSpace {
    problem: ContinuousProblem,
}

impl ContinuousSpace {
    pub fn new(problem: ContinuousProblem) -> Self {
        ContinuousSpace { problem }
    }

    pub fn problem(&self) -> &ContinuousProblem {
        &self.problem
    }

    fn uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> RealPosition {
        RealPosition(
            self.problem
                .lower
                .iter()
                .zip(&self.problem.upper)
                .map(|(l, u)| rng.random_range(*l..=*u))
                .collect(),
        )
    }

    /// `x` moved by `distance` along a uniformly random direction, clamped.
    fn scatter<R: Rng + ?Sized>(
        &self,
        x: &RealPosition,
        distance: f64,
        rng: &mut R,
    ) -> RealPosition {
        let dir = random_unit(x.dimension(), rng);
        let mut coords: Vec<f64> =
            x.0.iter()
                .zip(&dir)
                .map(|(c, d)| c + distance * d)
                .collect();
        self.problem.clamp(&mut coords);
        RealPosition(coords)
    }
}

impl SearchSpace for ContinuousSpace {
    type Position = RealPosition;

    fn distance(&self, x: &RealPosition, y: &RealPosition) -> f64 {
        debug_assert_eq!(x.dimension(), y.dimension());
        norm_of_difference(x.coords(), y.coords())
    }

    /// Moves `|k|` along the unit direction towards `anchor` (away for
    /// negative `k`). A position sitting on its anchor picks a random
    /// direction. The result is clamped to the bounds.
    fn translate<R: Rng + ?Sized>(
        &self,
        x: &RealPosition,
        k: f64,
        anchor: &RealPosition,
        rng: &mut R,
    ) -> RealPosition {
        if k == 0.0 || !k.is_finite() {
            return x.clone();
        }
        let d = norm_of_difference(anchor.coords(), x.coords());
        let dir: Vec<f64> = if d > 0.0 {
            anchor
                .0
                .iter()
                .zip(&x.0)
                .map(|(a, c)| (a - c) / d)
                .collect()
        } else {
            random_unit(x.dimension(), rng)
        };
        let mut coords: Vec<f64> = x.0.iter().zip(&dir).map(|(c, u)| c + k * u).collect();
        self.problem.clamp(&mut coords);
        RealPosition(coords)
    }

    fn random_position<R: Rng + ?Sized>(&self, rng: &mut R) -> RealPosition {
        self.uniform(rng)
    }

    /// A fresh uniform sample of the whole box: the jump is not limited by
    /// the launch point.
    fn max_distance_jump<R: Rng + ?Sized>(&self, _x: &RealPosition, rng: &mut R) -> RealPosition {
        self.uniform(rng)
    }

    fn fitness(&self, x: &RealPosition) -> f64 {
        self.problem.fitness(x)
    }

    fn is_optimal(&self, x: &RealPosition) -> bool {
        self.problem.objective_value(x) <= self.problem.epsilon
    }

    fn positions_equal(&self, x: &RealPosition, y: &RealPosition, tolerance: f64) -> bool {
        x.dimension() == y.dimension() && norm_of_difference(x.coords(), y.coords()) <= tolerance
    }

    fn taboo_tolerance(&self) -> f64 {
        1e-6
    }

    fn validate(&self, x: &RealPosition) -> Result<()> {
        if x.dimension() != self.problem.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.problem.dimension(),
                found: x.dimension(),
            });
        }
        let inside =
            x.0.iter()
                .zip(self.problem.lower.iter().zip(&self.problem.upper))
                .all(|(c, (l, u))| c.is_finite() && c >= l && c <= u);
        if !inside {
            return Err(Error::InvalidPosition(format!(
                "{:?} lies outside the bounds",
                x.0
            )));
        }
        Ok(())
    }

    fn shift_projections<R: Rng + ?Sized>(
        &self,
        x: &RealPosition,
        offset: &dyn Fn(f64) -> f64,
        _rng: &mut R,
    ) -> RealPosition {
        let mut coords: Vec<f64> = x.0.iter().map(|&c| c + offset(c)).collect();
        self.problem.clamp(&mut coords);
        RealPosition(coords)
    }

    /// Clan 0 is based at `seed`; the other clan bases are uniform samples
    /// kept at least [`CLAN_SEPARATION`] of the diameter apart. Pods sit
    /// two thirds of that separation from their clan base, individuals one
    /// third from their pod base.
    fn derive_population<R: Rng + ?Sized>(
        &self,
        seed: &RealPosition,
        shape: &PopulationShape,
        rng: &mut R,
    ) -> Vec<RealPosition> {
        let separation = CLAN_SEPARATION * self.problem.diameter();
        let mut clan_bases = vec![seed.clone()];
        while clan_bases.len() < shape.clans {
            let mut candidate = self.uniform(rng);
            for _ in 0..SEPARATION_ATTEMPTS {
                if clan_bases
                    .iter()
                    .all(|b| self.distance(b, &candidate) >= separation)
                {
                    break;
                }
                candidate = self.uniform(rng);
            }
            clan_bases.push(candidate);
        }
        let pod_offset = separation * 2.0 / 3.0;
        let individual_offset = separation / 3.0;
        let mut out = Vec::with_capacity(shape.size());
        for base in &clan_bases {
            for _ in 0..shape.pods_per_clan {
                let pod_base = self.scatter(base, pod_offset, rng);
                for _ in 0..shape.individuals_per_pod {
                    out.push(self.scatter(&pod_base, individual_offset, rng));
                }
            }
        }
        out
    }

    /// The objective value of the position.
    fn solution_size(&self, x: &RealPosition) -> f64 {
        self.problem.objective_value(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    fn line(lo: f64, hi: f64) -> ContinuousSpace {
        ContinuousSpace::new(ContinuousProblem::cube(Objective::Sphere, 1, lo, hi, 1e-2).unwrap())
    }

    fn p(v: &[f64]) -> RealPosition {
        RealPosition(v.to_vec())
    }

    #[test]
    fn distances() {
        assert_eq!(
            euclidean_distance(&p(&[1.0, 2.0]), &p(&[1.0, 2.0])).unwrap(),
            0.0
        );
        assert_eq!(
            euclidean_distance(&p(&[0.0, 0.0]), &p(&[3.0, 4.0])).unwrap(),
            5.0
        );
        assert_eq!(euclidean_distance(&p(&[2.0]), &p(&[7.0])).unwrap(), 5.0);
        assert!(matches!(
            euclidean_distance(&p(&[1.0]), &p(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn translate_semantics() {
        let space = line(-20.0, 20.0);
        let mut rng = rng_from_seed(1);
        assert_eq!(
            space.translate(&p(&[0.0]), 0.0, &p(&[10.0]), &mut rng),
            p(&[0.0])
        );
        assert_eq!(
            space.translate(&p(&[0.0]), 3.0, &p(&[10.0]), &mut rng),
            p(&[3.0])
        );
        assert_eq!(
            space.translate(&p(&[0.0]), -3.0, &p(&[10.0]), &mut rng),
            p(&[-3.0])
        );
        let tight = line(-2.0, 20.0);
        assert_eq!(
            tight.translate(&p(&[0.0]), -3.0, &p(&[10.0]), &mut rng),
            p(&[-2.0])
        );
    }

    #[test]
    fn translate_by_distance_reaches_anchor() {
        let space = line(-100.0, 100.0);
        let mut rng = rng_from_seed(2);
        let anchor = p(&[37.25]);
        let mut x = p(&[-81.5]);
        for _ in 0..3 {
            let k = space.distance(&x, &anchor);
            x = space.translate(&x, k, &anchor, &mut rng);
            assert!((x.0[0] - anchor.0[0]).abs() <= 1e-9);
        }
    }

    #[test]
    fn objectives() {
        let sphere = ContinuousProblem::cube(Objective::Sphere, 2, -5.0, 5.0, 1e-2).unwrap();
        assert_eq!(sphere.objective_value(&p(&[0.0, 0.0])), 0.0);
        assert_eq!(sphere.fitness(&p(&[0.0, 0.0])), 1.0);
        assert_eq!(sphere.objective_value(&p(&[1.0, 2.0])), 5.0);
        let rastrigin = ContinuousProblem::cube(Objective::Rastrigin, 1, -5.0, 5.0, 1e-2).unwrap();
        assert!((rastrigin.objective_value(&p(&[1.0])) - 1.0).abs() < 1e-12);
        assert_eq!(rastrigin.objective_value(&p(&[0.0])), 0.0);
    }

    #[test]
    fn optimality_threshold() {
        let space = ContinuousSpace::new(
            ContinuousProblem::cube(Objective::Sphere, 2, -5.0, 5.0, 0.5).unwrap(),
        );
        assert!(space.is_optimal(&p(&[0.5, 0.5])));
        assert!(!space.is_optimal(&p(&[0.5, 0.6])));
    }

    #[test]
    fn problem_validation() {
        assert!(ContinuousProblem::cube(Objective::Sphere, 0, -1.0, 1.0, 0.1).is_err());
        assert!(ContinuousProblem::cube(Objective::Sphere, 2, 1.0, 1.0, 0.1).is_err());
        assert!(ContinuousProblem::cube(Objective::Sphere, 2, -1.0, 1.0, 0.0).is_err());
        let space = line(-1.0, 1.0);
        assert!(space.validate(&p(&[2.0])).is_err());
        assert!(space.validate(&p(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn population_layout() {
        let space = ContinuousSpace::new(
            ContinuousProblem::cube(Objective::Sphere, 3, -5.0, 5.0, 1e-2).unwrap(),
        );
        let mut rng = rng_from_seed(3);
        let seed = p(&[1.0, 1.0, 1.0]);
        let shape = PopulationShape::new(4, 2, 5).unwrap();
        let members = space.derive_population(&seed, &shape, &mut rng);
        assert_eq!(members.len(), 40);
        for m in &members {
            space.validate(m).unwrap();
        }
        // First clan stays near the seed: pod offset + individual offset.
        let reach = CLAN_SEPARATION * space.problem().diameter() + 1e-9;
        for m in &members[..10] {
            assert!(space.distance(m, &seed) <= reach);
        }
    }

    proptest::proptest! {
        #[test]
        fn translate_stays_in_bounds(
            x in proptest::collection::vec(-5.0f64..5.0, 3),
            a in proptest::collection::vec(-5.0f64..5.0, 3),
            k in -50.0f64..50.0,
            seed in 0u64..1000,
        ) {
            let space = ContinuousSpace::new(
                ContinuousProblem::cube(Objective::Rastrigin, 3, -5.0, 5.0, 1e-2).unwrap(),
            );
            let mut rng = rng_from_seed(seed);
            let y = space.translate(&RealPosition(x), k, &RealPosition(a), &mut rng);
            proptest::prop_assert!(space.validate(&y).is_ok());
        }
    }
}
