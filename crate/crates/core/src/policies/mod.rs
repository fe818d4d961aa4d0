//! Index policies behind a common select/update interface.
//!
//! A policy is driven one round at a time: `select` picks the action for
//! round `round() + 1`, the simulator builds the matching [`Observation`],
//! and `update` folds it in. Every policy checks that the observation is
//! exactly the visibility set its scenario promises.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::env::Scenario;
use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::rng::Rng;
use crate::strategies::{StrategyGraph, StrategySet};

mod baseline;
mod dfl;
pub mod index;

pub use baseline::{Moss, RandomPolicy, Ucb1};
pub use dfl::{DflCso, DflCsr, DflSso, DflSsr};

/// What the learner sees after playing one round.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Observation {
    pub round: u64,
    /// Visible arms, ascending.
    pub arms: Vec<usize>,
    /// `values[k]` is the reward of `arms[k]` this round.
    pub values: Vec<f64>,
    /// Reward collected under the active scenario (unnormalized).
    pub reward: f64,
}

impl Observation {
    pub fn value_of(&self, arm: usize) -> Option<f64> {
        self.arms.binary_search(&arm).ok().map(|k| self.values[k])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyName {
    DflSso,
    DflCso,
    DflSsr,
    DflCsr,
    Moss,
    Ucb1,
    Random,
}

impl PolicyName {
    pub const ALL: [PolicyName; 7] = [
        PolicyName::DflSso,
        PolicyName::DflCso,
        PolicyName::DflSsr,
        PolicyName::DflCsr,
        PolicyName::Moss,
        PolicyName::Ucb1,
        PolicyName::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolicyName::DflSso => "dfl-sso",
            PolicyName::DflCso => "dfl-cso",
            PolicyName::DflSsr => "dfl-ssr",
            PolicyName::DflCsr => "dfl-csr",
            PolicyName::Moss => "moss",
            PolicyName::Ucb1 => "ucb1",
            PolicyName::Random => "random",
        }
    }

    /// Whether this policy can be run under `scenario`.
    pub fn supports(self, scenario: Scenario) -> bool {
        match self {
            PolicyName::DflSso | PolicyName::DflSsr => !scenario.is_combinatorial(),
            PolicyName::DflCso => scenario == Scenario::Cso,
            PolicyName::DflCsr => scenario == Scenario::Csr,
            PolicyName::Moss | PolicyName::Ucb1 | PolicyName::Random => true,
        }
    }
}

impl fmt::Display for PolicyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolicyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolicyName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown policy {s:?}")))
    }
}

/// Which round counter the DFL indices use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clock {
    /// Current round t.
    #[default]
    Anytime,
    /// Horizon n, as MOSS does.
    Horizon,
}

/// Constant in the DFL-CSO exploration term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CsoConstant {
    /// |F|
    #[default]
    StrategyCount,
    /// K
    ArmCount,
}

/// Ablation switches. Defaults reproduce the reference behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PolicyOptions {
    pub clock: Clock,
    pub cso_constant: CsoConstant,
    /// Divide SSR side-reward means by K before adding the bonus.
    pub ssr_normalize: bool,
}

impl Default for PolicyOptions {
    fn default() -> Self {
        PolicyOptions {
            clock: Clock::Anytime,
            cso_constant: CsoConstant::StrategyCount,
            ssr_normalize: true,
        }
    }
}

/// Counters exposed for inspection.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Snapshot {
    pub round: u64,
    /// Selections per action, T(t).
    pub selections: Vec<u64>,
    /// Per-arm observation counts O_{i,t}, where the policy keeps them.
    pub arm_observations: Option<Vec<u64>>,
    /// Per-strategy observation counts O_{x,t} (DFL-CSO).
    pub strategy_observations: Option<Vec<u64>>,
    /// Side-reward counts O^b_{i,t} (DFL-SSR).
    pub side_observations: Option<Vec<u64>>,
}

pub trait Policy: Send {
    fn name(&self) -> PolicyName;

    /// Size of the action universe (arms or strategies).
    fn num_actions(&self) -> usize;

    /// Rounds completed so far.
    fn round(&self) -> u64;

    /// Choose the action for round `round() + 1`.
    fn select(&mut self, rng: &mut Rng) -> usize;

    /// Fold in the observation produced by playing `action`.
    fn update(&mut self, action: usize, obs: &Observation) -> Result<()>;

    fn snapshot(&self) -> Snapshot;
}

/// Everything a policy may be built from.
#[derive(Debug, Clone)]
pub struct PolicyContext {
    pub scenario: Scenario,
    pub horizon: u64,
    pub graph: Arc<RelationGraph>,
    pub strategies: Option<Arc<StrategySet>>,
    pub strategy_graph: Option<Arc<StrategyGraph>>,
    pub options: PolicyOptions,
}

impl PolicyContext {
    /// Scale that maps the scenario reward into [0,1] for baselines.
    pub fn reward_scale(&self) -> f64 {
        match self.scenario {
            Scenario::Sso => 1.0,
            Scenario::Ssr => self.graph.num_arms() as f64,
            Scenario::Cso => self
                .strategies
                .as_ref()
                .map_or(1.0, |f| f.max_size() as f64),
            Scenario::Csr => self.strategies.as_ref().map_or(1.0, |f| f.max_y() as f64),
        }
    }

    pub fn num_actions(&self) -> usize {
        match (&self.strategies, self.scenario.is_combinatorial()) {
            (Some(fs), true) => fs.len(),
            _ => self.graph.num_arms(),
        }
    }

    fn strategies(&self) -> Result<Arc<StrategySet>> {
        self.strategies
            .clone()
            .ok_or_else(|| Error::input("policy needs a strategy set"))
    }
}

pub fn build_policy(name: PolicyName, ctx: &PolicyContext) -> Result<Box<dyn Policy>> {
    if !name.supports(ctx.scenario) {
        return Err(Error::input(format!(
            "policy {name} cannot run the {} scenario",
            ctx.scenario
        )));
    }
    if ctx.scenario.is_combinatorial() && ctx.strategies.is_none() {
        return Err(Error::input(format!(
            "scenario {} requires a strategy set",
            ctx.scenario
        )));
    }
    let clock_horizon = match ctx.options.clock {
        Clock::Anytime => None,
        Clock::Horizon => Some(ctx.horizon),
    };
    Ok(match name {
        PolicyName::DflSso => Box::new(DflSso::new(ctx.graph.clone(), clock_horizon)),
        PolicyName::DflSsr => Box::new(DflSsr::new(
            ctx.graph.clone(),
            clock_horizon,
            ctx.options.ssr_normalize,
        )),
        PolicyName::DflCso => {
            let fs = ctx.strategies()?;
            let sg = ctx
                .strategy_graph
                .clone()
                .ok_or_else(|| Error::input("dfl-cso needs a strategy graph"))?;
            Box::new(DflCso::new(
                fs,
                sg,
                clock_horizon,
                ctx.options.cso_constant,
            )?)
        }
        PolicyName::DflCsr => Box::new(DflCsr::new(ctx.strategies()?, clock_horizon)),
        PolicyName::Moss => Box::new(Moss::new(
            ctx.num_actions(),
            ctx.horizon,
            ctx.reward_scale(),
        )),
        PolicyName::Ucb1 => Box::new(Ucb1::new(ctx.num_actions(), ctx.reward_scale())),
        PolicyName::Random => Box::new(RandomPolicy::new(ctx.num_actions())),
    })
}

/// Indices of every maximal value, ascending. `out` is cleared first.
pub(crate) fn argmax_ties(values: impl IntoIterator<Item = f64>, out: &mut Vec<usize>) {
    out.clear();
    let mut best = f64::NEG_INFINITY;
    for (i, v) in values.into_iter().enumerate() {
        if v > best {
            best = v;
            out.clear();
            out.push(i);
        } else if v == best {
            out.push(i);
        }
    }
}

pub(crate) fn check_round(expected_round: u64, obs: &Observation) -> Result<()> {
    if obs.round != expected_round {
        return Err(Error::contract(
            expected_round,
            format!("observation is for round {}", obs.round),
        ));
    }
    if obs.arms.len() != obs.values.len() {
        return Err(Error::contract(
            expected_round,
            "arms/values length mismatch",
        ));
    }
    Ok(())
}

pub(crate) fn check_action(round: u64, action: usize, universe: usize) -> Result<()> {
    if action >= universe {
        return Err(Error::contract(
            round,
            format!("action {action} outside 0..{universe}"),
        ));
    }
    Ok(())
}

pub(crate) fn check_visible(round: u64, obs: &Observation, expected: &[usize]) -> Result<()> {
    if obs.arms != expected {
        return Err(Error::contract(
            round,
            format!(
                "visible set {:?} differs from the expected {:?}",
                obs.arms, expected
            ),
        ));
    }
    Ok(())
}
