use rand::Rng;

use super::PopulationShape;
use crate::{Error, Result, SearchSpace};

/// One search agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Orca<P> {
    pub position: P,
    pub velocity: f64,
    pub frequency: f64,
    pub loudness: f64,
    pub fitness: f64,
}

/// The clan / pod / individual hierarchy.
///
/// Orcas are stored flat in (clan, pod, individual) order; see
/// [`PopulationShape::index`]. Matriarch indices are flat indices into
/// `orcas`.
#[derive(Debug, Clone)]
pub struct Community<P> {
    shape: PopulationShape,
    orcas: Vec<Orca<P>>,
    pod_matriarchs: Vec<usize>,
    clan_matriarchs: Vec<usize>,
    global_matriarch: usize,
}

impl<P: Clone> Community<P> {
    /// Builds a community from already evaluated orcas.
    pub fn from_orcas(shape: PopulationShape, orcas: Vec<Orca<P>>) -> Result<Self> {
        shape.validate()?;
        if orcas.len() != shape.size() {
            return Err(Error::InvalidShape {
                clans: shape.clans,
                pods: shape.pods_per_clan,
                individuals: shape.individuals_per_pod,
            });
        }
        let mut community = Community {
            shape,
            orcas,
            pod_matriarchs: vec![0; shape.pods()],
            clan_matriarchs: vec![0; shape.clans],
            global_matriarch: 0,
        };
        community.update_matriarchs();
        Ok(community)
    }

    pub fn shape(&self) -> &PopulationShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.orcas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orcas.is_empty()
    }

    pub fn orcas(&self) -> &[Orca<P>] {
        &self.orcas
    }

    pub fn orcas_mut(&mut self) -> &mut [Orca<P>] {
        &mut self.orcas
    }

    pub fn orca(&self, clan: usize, pod: usize, individual: usize) -> &Orca<P> {
        &self.orcas[self.shape.index(clan, pod, individual)]
    }

    /// Flat index of the best orca in global pod `pod`.
    pub fn pod_matriarch(&self, pod: usize) -> usize {
        self.pod_matriarchs[pod]
    }

    pub fn clan_matriarch(&self, clan: usize) -> usize {
        self.clan_matriarchs[clan]
    }

    pub fn global_matriarch(&self) -> usize {
        self.global_matriarch
    }

    pub fn best(&self) -> &Orca<P> {
        &self.orcas[self.global_matriarch]
    }

    /// Recomputes the argmax at every level. Ties go to the lowest index.
    pub fn update_matriarchs(&mut self) {
        let pod_size = self.shape.individuals_per_pod;
        for pod in 0..self.shape.pods() {
            let start = pod * pod_size;
            self.pod_matriarchs[pod] = argmax(&self.orcas, start..start + pod_size);
        }
        let pods = self.shape.pods_per_clan;
        for clan in 0..self.shape.clans {
            let mut best = self.pod_matriarchs[clan * pods];
            for &m in &self.pod_matriarchs[clan * pods + 1..(clan + 1) * pods] {
                if self.orcas[m].fitness > self.orcas[best].fitness {
                    best = m;
                }
            }
            self.clan_matriarchs[clan] = best;
        }
        let mut best = self.clan_matriarchs[0];
        for &m in &self.clan_matriarchs[1..] {
            if self.orcas[m].fitness > self.orcas[best].fitness {
                best = m;
            }
        }
        self.global_matriarch = best;
    }

    /// Sum of fitness per global pod and per clan.
    pub(crate) fn fitness_sums(&self) -> (Vec<f64>, Vec<f64>) {
        let mut pods = vec![0.0; self.shape.pods()];
        let mut clans = vec![0.0; self.shape.clans];
        for (i, orca) in self.orcas.iter().enumerate() {
            pods[self.shape.pod_of(i)] += orca.fitness;
            clans[self.shape.clan_of(i)] += orca.fitness;
        }
        (pods, clans)
    }

    pub(crate) fn clan_matriarch_positions(&self) -> Vec<P> {
        self.clan_matriarchs
            .iter()
            .map(|&m| self.orcas[m].position.clone())
            .collect()
    }

    pub(crate) fn pod_matriarch_positions(&self) -> Vec<P> {
        self.pod_matriarchs
            .iter()
            .map(|&m| self.orcas[m].position.clone())
            .collect()
    }
}

fn argmax<P>(orcas: &[Orca<P>], range: std::ops::Range<usize>) -> usize {
    let mut best = range.start;
    for i in range {
        if orcas[i].fitness > orcas[best].fitness {
            best = i;
        }
    }
    best
}

/// Grows a fresh community around `seed` through the space's clan-derivation
/// hook. Velocities start at zero and every orca is evaluated.
pub fn create_population<S, R>(
    seed: &S::Position,
    shape: &PopulationShape,
    space: &S,
    rng: &mut R,
) -> Result<Community<S::Position>>
where
    S: SearchSpace,
    R: Rng + ?Sized,
{
    shape.validate()?;
    space.validate(seed)?;
    let positions = space.derive_population(seed, shape, rng);
    debug_assert_eq!(positions.len(), shape.size());
    let orcas = positions
        .into_iter()
        .map(|position| Orca {
            fitness: space.fitness(&position),
            position,
            velocity: 0.0,
            frequency: 0.0,
            loudness: 0.0,
        })
        .collect();
    Community::from_orcas(*shape, orcas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn community(shape: PopulationShape, fitness: &[f64]) -> Community<usize> {
        let orcas = fitness
            .iter()
            .enumerate()
            .map(|(i, &f)| Orca {
                position: i,
                velocity: 0.0,
                frequency: 0.0,
                loudness: 0.0,
                fitness: f,
            })
            .collect();
        Community::from_orcas(shape, orcas).unwrap()
    }

    #[test]
    fn pod_argmax() {
        let c = community(PopulationShape::new(1, 1, 3).unwrap(), &[0.2, 0.9, 0.5]);
        assert_eq!(c.pod_matriarch(0), 1);
        assert_eq!(c.clan_matriarch(0), 1);
        assert_eq!(c.global_matriarch(), 1);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let c = community(PopulationShape::new(2, 2, 2).unwrap(), &[0.5; 8]);
        assert_eq!(c.global_matriarch(), 0);
        assert_eq!(c.clan_matriarch(0), 0);
        assert_eq!(c.clan_matriarch(1), 4);
        assert_eq!(c.pod_matriarch(1), 2);
        assert_eq!(c.pod_matriarch(3), 6);
    }

    #[test]
    fn global_matriarch_in_second_clan() {
        let c = community(
            PopulationShape::new(2, 1, 2).unwrap(),
            &[0.1, 0.7, 0.9, 0.3],
        );
        assert_eq!(c.clan_matriarch(0), 1);
        assert_eq!(c.clan_matriarch(1), 2);
        assert_eq!(c.global_matriarch(), 2);
        assert_eq!(c.shape().clan_of(c.global_matriarch()), 1);
    }

    #[test]
    fn wrong_cardinality_rejected() {
        let orcas = vec![
            Orca {
                position: 0usize,
                velocity: 0.0,
                frequency: 0.0,
                loudness: 0.0,
                fitness: 0.0,
            };
            3
        ];
        assert!(Community::from_orcas(PopulationShape::new(1, 1, 2).unwrap(), orcas).is_err());
    }
}
