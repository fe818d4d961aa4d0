//! Stochastic reward generation and per-scenario optima.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::rng::{Rng, SeedableRng};
use crate::strategies::StrategySet;

/// Which of the four networked settings is being played.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// Single play, side observations.
    Sso,
    /// Combinatorial play, side observations.
    Cso,
    /// Single play, side rewards.
    Ssr,
    /// Combinatorial play, side rewards.
    Csr,
}

impl Scenario {
    pub fn is_combinatorial(self) -> bool {
        matches!(self, Scenario::Cso | Scenario::Csr)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Sso => "sso",
            Scenario::Cso => "cso",
            Scenario::Ssr => "ssr",
            Scenario::Csr => "csr",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sso" => Ok(Scenario::Sso),
            "cso" => Ok(Scenario::Cso),
            "ssr" => Ok(Scenario::Ssr),
            "csr" => Ok(Scenario::Csr),
            _ => Err(Error::input(format!("unknown scenario {s:?}"))),
        }
    }
}

/// Reward distribution family; every member has support in [0,1] and mean μ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RewardDist {
    #[default]
    Bernoulli,
    /// Uniform on [μ − w, μ + w] with w = min(μ, 1 − μ).
    UniformInterval,
    PointMass,
}

impl FromStr for RewardDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(RewardDist::Bernoulli),
            "uniform-interval" | "uniform" => Ok(RewardDist::UniformInterval),
            "point-mass" | "point" => Ok(RewardDist::PointMass),
            _ => Err(Error::input(format!("unknown distribution {s:?}"))),
        }
    }
}

/// Ground-truth environment. Immutable; round `t` rewards are a pure
/// function of `(seed, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BanditEnv {
    means: Vec<f64>,
    dist: RewardDist,
    seed: u64,
}

impl BanditEnv {
    pub fn new(means: Vec<f64>, dist: RewardDist, seed: u64) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::input("environment needs at least one arm"));
        }
        if let Some(m) = means.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(Error::input(format!("mean {m} outside [0,1]")));
        }
        Ok(BanditEnv { means, dist, seed })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn num_arms(&self) -> usize {
        self.means.len()
    }

    pub fn dist(&self) -> RewardDist {
        self.dist
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Full reward vector for round `t` (1-based).
    pub fn sample_round(&self, t: u64) -> Vec<f64> {
        let mut out = vec![0.0; self.means.len()];
        self.sample_round_into(t, &mut out);
        out
    }

    /// Fill `out` with round `t`'s rewards. Arm `i` takes the `i`-th draw of
    /// the ChaCha stream keyed by `(seed, t)`, so any round replays alone.
    pub fn sample_round_into(&self, t: u64, out: &mut [f64]) {
        let mut rng = Rng::seed_from_u64(self.seed);
        rng.set_stream(t);
        for (x, &mu) in out.iter_mut().zip(&self.means) {
            let u: f64 = rng.gen();
            *x = match self.dist {
                RewardDist::Bernoulli => {
                    if u < mu {
                        1.0
                    } else {
                        0.0
                    }
                }
                RewardDist::UniformInterval => {
                    let w = mu.min(1.0 - mu);
                    (mu - w + 2.0 * w * u).clamp(0.0, 1.0)
                }
                RewardDist::PointMass => mu,
            };
        }
    }
}

/// K means drawn i.i.d. from U[0,1].
pub fn uniform_means(num_arms: usize, seed: u64) -> Vec<f64> {
    let mut rng = Rng::seed_from_u64(seed);
    (0..num_arms).map(|_| rng.gen::<f64>()).collect()
}

/// Means file: one decimal per line; blank lines and `#` comments skipped.
pub fn parse_means(text: &str) -> Result<Vec<f64>> {
    let mut means = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            message: format!("{line:?}: {e}"),
        })?;
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("mean {v} outside [0,1]"),
            });
        }
        means.push(v);
    }
    Ok(means)
}

/// Expected value of every action under a scenario, plus the optimum and gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOptimum {
    pub scenario: Scenario,
    /// Expected reward of each action (arm or strategy).
    pub values: Vec<f64>,
    pub optimal_value: f64,
    /// Lowest-indexed maximizer.
    pub optimal_index: usize,
    pub gaps: Vec<f64>,
    /// Smallest positive gap; `None` when every gap is zero.
    pub delta_min: Option<f64>,
}

impl ScenarioOptimum {
    fn from_values(scenario: Scenario, values: Vec<f64>) -> Self {
        let (optimal_index, optimal_value) =
            values
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                    if v > best.1 {
                        (i, v)
                    } else {
                        best
                    }
                });
        let gaps: Vec<f64> = values.iter().map(|v| optimal_value - v).collect();
        let delta_min = gaps
            .iter()
            .copied()
            .filter(|&g| g > 0.0)
            .fold(None, |m: Option<f64>, g| Some(m.map_or(g, |m| m.min(g))));
        ScenarioOptimum {
            scenario,
            values,
            optimal_value,
            optimal_index,
            gaps,
            delta_min,
        }
    }

    pub fn num_actions(&self) -> usize {
        self.values.len()
    }
}

/// Scenario optimum: μ (SSO), λ_x = Σ_{s_x} μ (CSO), u_i = Σ_{N_i} μ (SSR),
/// σ_x = Σ_{Y_x} μ (CSR).
pub fn compute_optimum(
    means: &[f64],
    graph: &RelationGraph,
    strategies: Option<&StrategySet>,
    scenario: Scenario,
) -> Result<ScenarioOptimum> {
    if graph.num_arms() != means.len() {
        return Err(Error::input(format!(
            "graph has {} arms but {} means were given",
            graph.num_arms(),
            means.len()
        )));
    }
    let sum = |set: &[usize]| set.iter().map(|&i| means[i]).sum::<f64>();
    let values = match scenario {
        Scenario::Sso => means.to_vec(),
        Scenario::Ssr => (0..means.len()).map(|i| sum(graph.closed(i))).collect(),
        Scenario::Cso | Scenario::Csr => {
            let fs = strategies.ok_or_else(|| {
                Error::input(format!("scenario {scenario} requires a strategy set"))
            })?;
            if fs.num_arms() != means.len() {
                return Err(Error::input(
                    "strategy set built over a different arm count",
                ));
            }
            if scenario == Scenario::Cso {
                fs.strategies().iter().map(|s| sum(s)).collect()
            } else {
                fs.y_sets().iter().map(|y| sum(y)).collect()
            }
        }
    };
    Ok(ScenarioOptimum::from_values(scenario, values))
}
