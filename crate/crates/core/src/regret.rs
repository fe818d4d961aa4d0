//! Regret accounting and the closed-form regret bounds.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::env::{Scenario, ScenarioOptimum};
use crate::error::{Error, Result};
use crate::graph::{greedy_clique_cover, RelationGraph};

/// Threshold multiplier α in δ₀ = α·sqrt(K/n).
pub const ALPHA: f64 = E;

/// Per-round record of one episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretTrace {
    pub scenario: Scenario,
    pub horizon: u64,
    pub optimal_value: f64,
    pub actions: Vec<usize>,
    pub rewards: Vec<f64>,
    /// optimal_value − realized reward.
    pub instant_realized: Vec<f64>,
    /// Gap of the chosen action.
    pub instant_pseudo: Vec<f64>,
    pub cum_realized: Vec<f64>,
    pub cum_pseudo: Vec<f64>,
}

impl RegretTrace {
    pub fn new(scenario: Scenario, horizon: u64, optimal_value: f64) -> Self {
        let cap = usize::try_from(horizon).unwrap_or(0);
        RegretTrace {
            scenario,
            horizon,
            optimal_value,
            actions: Vec::with_capacity(cap),
            rewards: Vec::with_capacity(cap),
            instant_realized: Vec::with_capacity(cap),
            instant_pseudo: Vec::with_capacity(cap),
            cum_realized: Vec::with_capacity(cap),
            cum_pseudo: Vec::with_capacity(cap),
        }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Append round `len() + 1`.
    pub fn record(&mut self, opt: &ScenarioOptimum, action: usize, reward: f64) -> Result<()> {
        let round = self.len() as u64 + 1;
        if opt.scenario != self.scenario {
            return Err(Error::contract(
                round,
                format!(
                    "optimum computed for {} but trace is {}",
                    opt.scenario, self.scenario
                ),
            ));
        }
        let gap = *opt
            .gaps
            .get(action)
            .ok_or_else(|| Error::contract(round, format!("action {action} has no gap entry")))?;
        if !reward.is_finite() || reward < 0.0 {
            return Err(Error::contract(
                round,
                format!("reward {reward} out of range"),
            ));
        }
        let realized = self.optimal_value - reward;
        let prev_r = self.cum_realized.last().copied().unwrap_or(0.0);
        let prev_p = self.cum_pseudo.last().copied().unwrap_or(0.0);
        self.actions.push(action);
        self.rewards.push(reward);
        self.instant_realized.push(realized);
        self.instant_pseudo.push(gap);
        self.cum_realized.push(prev_r + realized);
        self.cum_pseudo.push(prev_p + gap);
        Ok(())
    }

    pub fn final_pseudo(&self) -> f64 {
        self.cum_pseudo.last().copied().unwrap_or(0.0)
    }

    pub fn final_realized(&self) -> f64 {
        self.cum_realized.last().copied().unwrap_or(0.0)
    }
}

/// Regret bound for DFL-SSO: `15.94·sqrt(nK) + 0.74·|C|·sqrt(n/K)`.
pub fn bound_sso(n: u64, arms: u64, clique_count: usize) -> f64 {
    let (n, k) = (n as f64, arms as f64);
    15.94 * (n * k).sqrt() + 0.74 * clique_count as f64 * (n / k).sqrt()
}

/// DFL-CSO: the SSO bound with K replaced by |F|.
pub fn bound_cso(n: u64, num_strategies: u64, clique_count: usize) -> f64 {
    bound_sso(n, num_strategies, clique_count)
}

/// DFL-SSR: `49·K·sqrt(nK)`.
pub fn bound_ssr(n: u64, arms: u64) -> f64 {
    let (n, k) = (n as f64, arms as f64);
    49.0 * k * (n * k).sqrt()
}

/// MOSS over `actions` independent actions: `49·sqrt(n·actions)`.
pub fn bound_moss(n: u64, actions: u64) -> f64 {
    49.0 * ((n * actions) as f64).sqrt()
}

/// DFL-CSR:
/// `NK + (sqrt(eK) + 8(1+N)N³)·n^{2/3} + (1 + 4·sqrt(K)·N²/e)·N²·K·n^{5/6}`.
pub fn bound_csr(n: u64, arms: u64, max_y: u64) -> Result<f64> {
    if max_y == 0 || max_y > arms {
        return Err(Error::input(format!("N = {max_y} must lie in 1..={arms}")));
    }
    let (n, k, big_n) = (n as f64, arms as f64, max_y as f64);
    let n23 = n.powf(2.0 / 3.0);
    let n56 = n.powf(5.0 / 6.0);
    Ok(big_n * k
        + ((E * k).sqrt() + 8.0 * (1.0 + big_n) * big_n.powi(3)) * n23
        + (1.0 + 4.0 * k.sqrt() * big_n * big_n / E) * big_n * big_n * k * n56)
}

/// Greedy clique-cover size of the subgraph induced by the actions whose gap
/// exceeds δ₀ = α·sqrt(K/n), with K the vertex count of `g`.
pub fn clique_count_for_bound(
    g: &RelationGraph,
    gaps: &[f64],
    n: u64,
    alpha: f64,
) -> Result<usize> {
    if gaps.len() != g.num_arms() {
        return Err(Error::input(format!(
            "{} gaps for {} vertices",
            gaps.len(),
            g.num_arms()
        )));
    }
    let delta0 = alpha * (g.num_arms() as f64 / n as f64).sqrt();
    let keep: Vec<usize> = (0..g.num_arms()).filter(|&i| gaps[i] > delta0).collect();
    let (h, _) = g.induced_subgraph(&keep)?;
    Ok(greedy_clique_cover(&h).size())
}

/// Bound matching `scenario` for an environment with the given optimum.
///
/// `graph` is the strategy graph (as a relation graph) for CSO and the arm
/// graph otherwise.
pub fn scenario_bound(
    scenario: Scenario,
    n: u64,
    graph: &RelationGraph,
    opt: &ScenarioOptimum,
    max_y: Option<usize>,
) -> Result<f64> {
    let actions = opt.num_actions() as u64;
    Ok(match scenario {
        Scenario::Sso => bound_sso(
            n,
            actions,
            clique_count_for_bound(graph, &opt.gaps, n, ALPHA)?,
        ),
        Scenario::Cso => bound_cso(
            n,
            actions,
            clique_count_for_bound(graph, &opt.gaps, n, ALPHA)?,
        ),
        Scenario::Ssr => bound_ssr(n, actions),
        Scenario::Csr => {
            let big_n = max_y.ok_or_else(|| Error::input("csr bound needs N = max |Y_x|"))?;
            bound_csr(n, graph.num_arms() as u64, big_n as u64)?
        }
    })
}
