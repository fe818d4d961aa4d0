//! Baselines that learn only from the reward of the action they play.

use rand::Rng as _;

use super::index::{moss_index, ucb1_index};
use super::{argmax_ties, check_action, check_round, Observation, Policy, PolicyName, Snapshot};
use crate::error::Result;
use crate::rng::{pick_uniform, Rng};

#[derive(Debug, Clone)]
struct ActionStats {
    pulls: Vec<u64>,
    sums: Vec<f64>,
    means: Vec<f64>,
    scale: f64,
    round: u64,
}

impl ActionStats {
    fn new(n: usize, scale: f64) -> Self {
        ActionStats {
            pulls: vec![0; n],
            sums: vec![0.0; n],
            means: vec![0.0; n],
            scale,
            round: 0,
        }
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        let t = self.round + 1;
        check_round(t, obs)?;
        check_action(t, action, self.pulls.len())?;
        self.pulls[action] += 1;
        self.sums[action] += obs.reward / self.scale;
        self.means[action] = self.sums[action] / self.pulls[action] as f64;
        self.round = t;
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            round: self.round,
            selections: self.pulls.clone(),
            ..Snapshot::default()
        }
    }
}

/// MOSS over the action universe, with rewards divided by `scale`.
#[derive(Debug, Clone)]
pub struct Moss {
    stats: ActionStats,
    horizon: u64,
    ties: Vec<usize>,
}

impl Moss {
    pub fn new(actions: usize, horizon: u64, scale: f64) -> Self {
        Moss {
            stats: ActionStats::new(actions, scale),
            horizon,
            ties: Vec::new(),
        }
    }
}

impl Policy for Moss {
    fn name(&self) -> PolicyName {
        PolicyName::Moss
    }

    fn num_actions(&self) -> usize {
        self.stats.pulls.len()
    }

    fn round(&self) -> u64 {
        self.stats.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let k = self.num_actions() as u64;
        let s = &self.stats;
        let idx = s
            .means
            .iter()
            .zip(&s.pulls)
            .map(|(&m, &n)| moss_index(m, n, self.horizon, k));
        argmax_ties(idx, &mut self.ties);
        pick_uniform(&self.ties, rng)
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        self.stats.update(action, obs)
    }

    fn snapshot(&self) -> Snapshot {
        self.stats.snapshot()
    }
}

#[derive(Debug, Clone)]
pub struct Ucb1 {
    stats: ActionStats,
    ties: Vec<usize>,
}

impl Ucb1 {
    pub fn new(actions: usize, scale: f64) -> Self {
        Ucb1 {
            stats: ActionStats::new(actions, scale),
            ties: Vec::new(),
        }
    }
}

impl Policy for Ucb1 {
    fn name(&self) -> PolicyName {
        PolicyName::Ucb1
    }

    fn num_actions(&self) -> usize {
        self.stats.pulls.len()
    }

    fn round(&self) -> u64 {
        self.stats.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let t = self.stats.round + 1;
        let s = &self.stats;
        let idx = s
            .means
            .iter()
            .zip(&s.pulls)
            .map(|(&m, &n)| ucb1_index(m, n, t));
        argmax_ties(idx, &mut self.ties);
        pick_uniform(&self.ties, rng)
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        self.stats.update(action, obs)
    }

    fn snapshot(&self) -> Snapshot {
        self.stats.snapshot()
    }
}

/// Uniformly random action every round.
#[derive(Debug, Clone)]
pub struct RandomPolicy {
    stats: ActionStats,
}

impl RandomPolicy {
    pub fn new(actions: usize) -> Self {
        RandomPolicy {
            stats: ActionStats::new(actions, 1.0),
        }
    }
}

impl Policy for RandomPolicy {
    fn name(&self) -> PolicyName {
        PolicyName::Random
    }

    fn num_actions(&self) -> usize {
        self.stats.pulls.len()
    }

    fn round(&self) -> u64 {
        self.stats.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        rng.gen_range(0..self.num_actions())
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        self.stats.update(action, obs)
    }

    fn snapshot(&self) -> Snapshot {
        self.stats.snapshot()
    }
}
