//! The four distribution-free networked policies.

use std::sync::Arc;

use super::index::{cso_index, csr_arm_score, sso_index, ssr_index};
use super::{
    argmax_ties, check_action, check_round, check_visible, CsoConstant, Observation, Policy,
    PolicyName, Snapshot,
};
use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::rng::{pick_uniform, Rng};
use crate::strategies::{argmax_strategy, ScoreMode, StrategyGraph, StrategySet};

/// Per-arm observation counts and reward sums, shared by the arm-level
/// policies. Means are `sum / count`, so equal histories give bit-equal means.
#[derive(Debug, Clone)]
struct ArmStats {
    observations: Vec<u64>,
    sums: Vec<f64>,
    means: Vec<f64>,
}

impl ArmStats {
    fn new(k: usize) -> Self {
        ArmStats {
            observations: vec![0; k],
            sums: vec![0.0; k],
            means: vec![0.0; k],
        }
    }

    fn absorb(&mut self, obs: &Observation) {
        for (&k, &x) in obs.arms.iter().zip(&obs.values) {
            self.observations[k] += 1;
            self.sums[k] += x;
            self.means[k] = self.sums[k] / self.observations[k] as f64;
        }
    }
}

/// DFL-SSO: single play, side observations over N_i.
#[derive(Debug, Clone)]
pub struct DflSso {
    graph: Arc<RelationGraph>,
    horizon: Option<u64>,
    stats: ArmStats,
    pulls: Vec<u64>,
    round: u64,
    ties: Vec<usize>,
}

impl DflSso {
    /// `horizon` switches the index clock from t to n.
    pub fn new(graph: Arc<RelationGraph>, horizon: Option<u64>) -> Self {
        let k = graph.num_arms();
        DflSso {
            graph,
            horizon,
            stats: ArmStats::new(k),
            pulls: vec![0; k],
            round: 0,
            ties: Vec::new(),
        }
    }

    /// Current index of every arm for the upcoming round.
    pub fn indices(&self) -> Vec<f64> {
        let t = self.horizon.unwrap_or(self.round + 1);
        let k = self.graph.num_arms() as u64;
        self.stats
            .means
            .iter()
            .zip(&self.stats.observations)
            .map(|(&m, &o)| sso_index(m, o, t, k))
            .collect()
    }

    pub fn means(&self) -> &[f64] {
        &self.stats.means
    }
}

impl Policy for DflSso {
    fn name(&self) -> PolicyName {
        PolicyName::DflSso
    }

    fn num_actions(&self) -> usize {
        self.graph.num_arms()
    }

    fn round(&self) -> u64 {
        self.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let idx = self.indices();
        argmax_ties(idx, &mut self.ties);
        pick_uniform(&self.ties, rng)
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        let t = self.round + 1;
        check_round(t, obs)?;
        check_action(t, action, self.num_actions())?;
        check_visible(t, obs, self.graph.closed(action))?;
        self.stats.absorb(obs);
        self.pulls[action] += 1;
        self.round = t;
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            round: self.round,
            selections: self.pulls.clone(),
            arm_observations: Some(self.stats.observations.clone()),
            ..Snapshot::default()
        }
    }
}

/// DFL-SSR: single play, side rewards B_i = Σ_{N_i} X.
///
/// The side-reward mean of arm i is `Σ_{j∈N_i} X̄_j` and its count is
/// `O^b_i = min_{j∈N_i} O_j`, refreshed for every arm within two hops of
/// the played arm.
#[derive(Debug, Clone)]
pub struct DflSsr {
    graph: Arc<RelationGraph>,
    horizon: Option<u64>,
    normalize: bool,
    stats: ArmStats,
    side_observations: Vec<u64>,
    pulls: Vec<u64>,
    round: u64,
    stamp: Vec<u64>,
    ties: Vec<usize>,
}

impl DflSsr {
    pub fn new(graph: Arc<RelationGraph>, horizon: Option<u64>, normalize: bool) -> Self {
        let k = graph.num_arms();
        DflSsr {
            graph,
            horizon,
            normalize,
            stats: ArmStats::new(k),
            side_observations: vec![0; k],
            pulls: vec![0; k],
            round: 0,
            stamp: vec![0; k],
            ties: Vec::new(),
        }
    }

    /// B̄_i, divided by K when normalization is on.
    pub fn side_means(&self) -> Vec<f64> {
        let scale = if self.normalize {
            self.graph.num_arms() as f64
        } else {
            1.0
        };
        (0..self.graph.num_arms())
            .map(|i| {
                self.graph
                    .closed(i)
                    .iter()
                    .map(|&j| self.stats.means[j])
                    .sum::<f64>()
                    / scale
            })
            .collect()
    }

    pub fn indices(&self) -> Vec<f64> {
        let t = self.horizon.unwrap_or(self.round + 1);
        let k = self.graph.num_arms() as u64;
        self.side_means()
            .into_iter()
            .zip(&self.side_observations)
            .map(|(b, &ob)| ssr_index(b, ob, t, k))
            .collect()
    }
}

impl Policy for DflSsr {
    fn name(&self) -> PolicyName {
        PolicyName::DflSsr
    }

    fn num_actions(&self) -> usize {
        self.graph.num_arms()
    }

    fn round(&self) -> u64 {
        self.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let idx = self.indices();
        argmax_ties(idx, &mut self.ties);
        pick_uniform(&self.ties, rng)
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        let t = self.round + 1;
        check_round(t, obs)?;
        check_action(t, action, self.num_actions())?;
        check_visible(t, obs, self.graph.closed(action))?;
        self.stats.absorb(obs);
        for &k in self.graph.closed(action) {
            for &i in self.graph.closed(k) {
                if self.stamp[i] == t {
                    continue;
                }
                self.stamp[i] = t;
                self.side_observations[i] = self
                    .graph
                    .closed(i)
                    .iter()
                    .map(|&j| self.stats.observations[j])
                    .min()
                    .unwrap_or(0);
            }
        }
        self.pulls[action] += 1;
        self.round = t;
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            round: self.round,
            selections: self.pulls.clone(),
            arm_observations: Some(self.stats.observations.clone()),
            side_observations: Some(self.side_observations.clone()),
            ..Snapshot::default()
        }
    }
}

/// DFL-CSO: combinatorial play reduced to single play on the strategy graph.
///
/// Playing x reveals the reward of every strategy in x's closed
/// strategy-graph neighborhood. Means are kept divided by M.
#[derive(Debug, Clone)]
pub struct DflCso {
    strategies: Arc<StrategySet>,
    graph: Arc<StrategyGraph>,
    horizon: Option<u64>,
    constant: u64,
    observations: Vec<u64>,
    sums: Vec<f64>,
    means: Vec<f64>,
    pulls: Vec<u64>,
    round: u64,
    visible: Vec<usize>,
    ties: Vec<usize>,
}

impl DflCso {
    pub fn new(
        strategies: Arc<StrategySet>,
        graph: Arc<StrategyGraph>,
        horizon: Option<u64>,
        constant: CsoConstant,
    ) -> Result<Self> {
        if graph.len() != strategies.len() {
            return Err(Error::input(
                "strategy graph and strategy set differ in size",
            ));
        }
        let n = strategies.len();
        let constant = match constant {
            CsoConstant::StrategyCount => n as u64,
            CsoConstant::ArmCount => strategies.num_arms() as u64,
        };
        Ok(DflCso {
            strategies,
            graph,
            horizon,
            constant,
            observations: vec![0; n],
            sums: vec![0.0; n],
            means: vec![0.0; n],
            pulls: vec![0; n],
            round: 0,
            visible: Vec::new(),
            ties: Vec::new(),
        })
    }

    pub fn indices(&self) -> Vec<f64> {
        let t = self.horizon.unwrap_or(self.round + 1);
        self.means
            .iter()
            .zip(&self.observations)
            .map(|(&m, &o)| cso_index(m, o, t, self.constant))
            .collect()
    }

    /// Arms that must be visible when `x` is played.
    pub fn visible_arms(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .graph
            .closed(x)
            .iter()
            .flat_map(|&y| self.strategies.strategy(y))
            .copied()
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Policy for DflCso {
    fn name(&self) -> PolicyName {
        PolicyName::DflCso
    }

    fn num_actions(&self) -> usize {
        self.strategies.len()
    }

    fn round(&self) -> u64 {
        self.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let idx = self.indices();
        argmax_ties(idx, &mut self.ties);
        pick_uniform(&self.ties, rng)
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        let t = self.round + 1;
        check_round(t, obs)?;
        check_action(t, action, self.num_actions())?;
        self.visible = self.visible_arms(action);
        check_visible(t, obs, &self.visible)?;
        let m = self.strategies.max_size() as f64;
        for &y in self.graph.closed(action) {
            let mut reward = 0.0;
            for &i in self.strategies.strategy(y) {
                reward += obs.value_of(i).ok_or_else(|| {
                    Error::contract(t, format!("arm {i} of strategy {y} not visible"))
                })?;
            }
            self.observations[y] += 1;
            self.sums[y] += reward / m;
            self.means[y] = self.sums[y] / self.observations[y] as f64;
        }
        self.pulls[action] += 1;
        self.round = t;
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            round: self.round,
            selections: self.pulls.clone(),
            strategy_observations: Some(self.observations.clone()),
            ..Snapshot::default()
        }
    }
}

/// DFL-CSR: combinatorial play, side rewards over Y_x, learned per arm.
#[derive(Debug, Clone)]
pub struct DflCsr {
    strategies: Arc<StrategySet>,
    horizon: Option<u64>,
    stats: ArmStats,
    pulls: Vec<u64>,
    round: u64,
}

impl DflCsr {
    pub fn new(strategies: Arc<StrategySet>, horizon: Option<u64>) -> Self {
        let k = strategies.num_arms();
        let n = strategies.len();
        DflCsr {
            strategies,
            horizon,
            stats: ArmStats::new(k),
            pulls: vec![0; n],
            round: 0,
        }
    }

    /// Per-arm optimistic scores w_i for the upcoming round.
    pub fn arm_scores(&self) -> Vec<f64> {
        let t = self.horizon.unwrap_or(self.round + 1);
        let k = self.strategies.num_arms() as u64;
        self.stats
            .means
            .iter()
            .zip(&self.stats.observations)
            .map(|(&m, &o)| csr_arm_score(m, o, t, k))
            .collect()
    }
}

impl Policy for DflCsr {
    fn name(&self) -> PolicyName {
        PolicyName::DflCsr
    }

    fn num_actions(&self) -> usize {
        self.strategies.len()
    }

    fn round(&self) -> u64 {
        self.round
    }

    fn select(&mut self, rng: &mut Rng) -> usize {
        let scores = self.arm_scores();
        argmax_strategy(&self.strategies, &scores, ScoreMode::SumOverY, rng)
            .expect("strategy set is nonempty and sized to the arms")
    }

    fn update(&mut self, action: usize, obs: &Observation) -> Result<()> {
        let t = self.round + 1;
        check_round(t, obs)?;
        check_action(t, action, self.num_actions())?;
        check_visible(t, obs, self.strategies.y_set(action))?;
        self.stats.absorb(obs);
        self.pulls[action] += 1;
        self.round = t;
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            round: self.round,
            selections: self.pulls.clone(),
            arm_observations: Some(self.stats.observations.clone()),
            ..Snapshot::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedableRng;
    use crate::strategies::{build_strategy_graph, enumerate_feasible, Constraint};

    fn observe(round: u64, arms: &[usize], rewards: &[f64]) -> Observation {
        Observation {
            round,
            arms: arms.to_vec(),
            values: arms.iter().map(|&i| rewards[i]).collect(),
            reward: 0.0,
        }
    }

    #[test]
    fn sso_cold_start_is_all_sentinels() {
        let p = DflSso::new(Arc::new(RelationGraph::path(5)), None);
        assert!(p.indices().iter().all(|v| v.is_infinite()));
    }

    #[test]
    fn sso_complete_graph_sees_everything() {
        let g = Arc::new(RelationGraph::complete(4));
        let mut p = DflSso::new(g.clone(), None);
        let mut rng = Rng::seed_from_u64(1);
        for t in 1..=10 {
            let a = p.select(&mut rng);
            p.update(a, &observe(t, g.closed(a), &[0.1, 0.2, 0.3, 0.4]))
                .unwrap();
            let snap = p.snapshot();
            assert!(snap.arm_observations.unwrap().iter().all(|&o| o == t));
        }
    }

    #[test]
    fn sso_running_mean() {
        let g = Arc::new(RelationGraph::empty(1));
        let mut p = DflSso::new(g, None);
        p.update(0, &observe(1, &[0], &[0.2])).unwrap();
        p.update(0, &observe(2, &[0], &[0.8])).unwrap();
        assert!((p.means()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sso_rejects_wrong_visibility_and_round() {
        let g = Arc::new(RelationGraph::path(3));
        let mut p = DflSso::new(g, None);
        let err = p.update(1, &observe(1, &[0, 1], &[0.0; 3])).unwrap_err();
        assert!(matches!(err, Error::Contract { round: 1, .. }));
        let err = p.update(1, &observe(2, &[0, 1, 2], &[0.0; 3])).unwrap_err();
        assert!(matches!(err, Error::Contract { .. }));
        assert!(p.update(7, &observe(1, &[0], &[0.0; 3])).is_err());
    }

    #[test]
    fn ssr_side_counts_on_path() {
        // N_0 = {0,1}; O_0 = 3, O_1 = 1 then arm 1 is observed once more.
        let g = Arc::new(RelationGraph::new(3, &[(0, 1), (1, 2)]).unwrap());
        let mut p = DflSsr::new(g, None, true);
        let x = [0.5; 3];
        p.update(0, &observe(1, &[0, 1], &x)).unwrap();
        p.update(0, &observe(2, &[0, 1], &x)).unwrap();
        let snap = p.snapshot();
        assert_eq!(snap.arm_observations.as_ref().unwrap(), &vec![2, 2, 0]);
        assert_eq!(snap.side_observations.as_ref().unwrap(), &vec![2, 0, 0]);
        p.update(2, &observe(3, &[1, 2], &x)).unwrap();
        let snap = p.snapshot();
        assert_eq!(snap.arm_observations.unwrap(), vec![2, 3, 1]);
        assert_eq!(snap.side_observations.unwrap(), vec![2, 1, 1]);
    }

    #[test]
    fn ssr_min_rule_increment() {
        // N_0 = {0,1} with arm 2 attached to 0: O_0 = 3, O_1 = 1, then arm 1 observed.
        let g = Arc::new(RelationGraph::new(3, &[(0, 1), (0, 2)]).unwrap());
        let mut p = DflSsr::new(g, None, true);
        let x = [0.5; 3];
        p.update(1, &observe(1, &[0, 1], &x)).unwrap();
        p.update(2, &observe(2, &[0, 2], &x)).unwrap();
        p.update(2, &observe(3, &[0, 2], &x)).unwrap();
        let snap = p.snapshot();
        assert_eq!(snap.arm_observations.unwrap(), vec![3, 1, 2]);
        // O^b of arm 1 = min(O_0, O_1) = 1
        assert_eq!(snap.side_observations.unwrap()[1], 1);
        p.update(1, &observe(4, &[0, 1], &x)).unwrap();
        assert_eq!(p.snapshot().side_observations.unwrap()[1], 2);
    }

    #[test]
    fn ssr_point_mass_trace_on_path() {
        let g = Arc::new(RelationGraph::path(3));
        let mut p = DflSsr::new(g.clone(), None, true);
        let mu = [0.9, 0.5, 0.4];
        let mut rng = Rng::seed_from_u64(3);
        let mut last = Vec::new();
        for t in 1..=200 {
            let a = p.select(&mut rng);
            p.update(a, &observe(t, g.closed(a), &mu)).unwrap();
            if t > 20 {
                last.push(a);
            }
        }
        let b = p.side_means();
        for (v, e) in b.iter().zip([1.4 / 3.0, 1.8 / 3.0, 0.9 / 3.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        assert!(last.iter().all(|&a| a == 1));
    }

    #[test]
    fn cso_path_example_updates_neighbourhood() {
        let g = RelationGraph::path(4);
        let fs =
            Arc::new(enumerate_feasible(&g, &Constraint::IndependentSets { max_size: 2 }).unwrap());
        let sg = Arc::new(build_strategy_graph(&fs));
        let mut p = DflCso::new(fs.clone(), sg.clone(), None, CsoConstant::StrategyCount).unwrap();
        let x = [0.1, 0.2, 0.3, 0.4];
        let visible = p.visible_arms(4);
        assert_eq!(visible, vec![0, 1, 2, 3]);
        p.update(4, &observe(1, &visible, &x)).unwrap();
        let counts = p.snapshot().strategy_observations.unwrap();
        for (y, &c) in counts.iter().enumerate() {
            assert_eq!(c, u64::from(sg.closed(4).contains(&y)));
        }
        // s5 = {1,3} -> 0.1 + 0.3, divided by M = 2.
        assert!((p.means[4] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn cso_single_strategy() {
        let g = RelationGraph::path(2);
        let fs = Arc::new(StrategySet::from_strategies(&g, vec![vec![0]]).unwrap());
        let sg = Arc::new(build_strategy_graph(&fs));
        let mut p = DflCso::new(fs, sg, None, CsoConstant::StrategyCount).unwrap();
        let mut rng = Rng::seed_from_u64(0);
        for t in 1..=5 {
            assert_eq!(p.select(&mut rng), 0);
            p.update(0, &observe(t, &[0], &[1.0, 0.0])).unwrap();
        }
    }

    #[test]
    fn csr_cold_start_picks_widest_neighbourhood() {
        let g = RelationGraph::path(4);
        let fs =
            Arc::new(enumerate_feasible(&g, &Constraint::IndependentSets { max_size: 2 }).unwrap());
        let mut p = DflCsr::new(fs.clone(), None);
        let mut rng = Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x = p.select(&mut rng);
            assert_eq!(fs.y_set(x).len(), fs.max_y());
        }
        let x = 4;
        let err = p.update(x, &observe(1, &[0, 1], &[0.0; 4])).unwrap_err();
        assert!(matches!(err, Error::Contract { .. }));
        p.update(x, &observe(1, fs.y_set(x), &[0.0; 4])).unwrap();
        assert_eq!(p.snapshot().arm_observations.unwrap(), vec![1, 1, 1, 1]);
    }
}
