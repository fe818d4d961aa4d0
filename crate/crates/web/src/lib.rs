//! Browser bindings: regret-curve simulation, graph + clique cover, and
//! the bound calculator. Each call takes and returns plain JSON so the
//! page needs no generated types.

use netbandit::env::{RewardDist, Scenario};
use netbandit::graph::{greedy_clique_cover, RelationGraph};
use netbandit::policies::{PolicyName, PolicyOptions};
use netbandit::regret::{bound_cso, bound_csr, bound_moss, bound_sso, bound_ssr};
use netbandit::sim::{
    replicate_seeds, run_batch, BatchOptions, EnvSpec, EpisodeConfig, GraphSpec, MeansSpec,
    StrategySpec,
};
use netbandit::strategies::Constraint;
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

const MAX_ARMS: usize = 200;
const MAX_WORK: u64 = 5_000_000;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateRequest {
    pub scenario: Scenario,
    pub policies: Vec<PolicyName>,
    pub arms: usize,
    /// Edge probability of the Erdős–Rényi relation graph.
    pub p: f64,
    pub horizon: u64,
    #[serde(default = "default_seeds")]
    pub seeds: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// `independent:2` etc.; required for cso/csr.
    #[serde(default)]
    pub strategies: Option<String>,
    #[serde(default)]
    pub dist: RewardDist,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
}

fn default_seeds() -> usize {
    5
}

fn default_checkpoints() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub policy: PolicyName,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateResponse {
    pub checkpoints: Vec<u64>,
    /// Time-averaged regret per policy, mean ± std over seeds.
    pub curves: Vec<Curve>,
    /// Mean bound / t, when the scenario has one.
    pub bound: Option<Vec<f64>>,
}

pub fn simulate_json(request: &str) -> Result<String, String> {
    let req: SimulateRequest = serde_json::from_str(request).map_err(|e| e.to_string())?;
    if req.arms == 0 || req.arms > MAX_ARMS {
        return Err(format!("arms must be in 1..={MAX_ARMS}"));
    }
    if !(0.0..=1.0).contains(&req.p) {
        return Err("p must be in [0, 1]".into());
    }
    let work = req
        .horizon
        .saturating_mul((req.seeds * req.policies.len()) as u64);
    if work > MAX_WORK {
        return Err(format!(
            "horizon × seeds × policies must stay under {MAX_WORK}"
        ));
    }
    if req.policies.is_empty() {
        return Err("pick at least one policy".into());
    }
    let strategies = req
        .strategies
        .as_deref()
        .filter(|_| req.scenario.is_combinatorial())
        .map(Constraint::parse)
        .transpose()
        .map_err(|e| e.to_string())?
        .map(StrategySpec::new);
    let template = EpisodeConfig {
        scenario: req.scenario,
        policy: req.policies[0],
        horizon: req.horizon,
        arms: req.arms,
        graph: GraphSpec::Er {
            p: req.p,
            seed: None,
        },
        strategies,
        env: EnvSpec {
            dist: req.dist,
            means: MeansSpec::Uniform { seed: None },
        },
        seed: 0,
        options: PolicyOptions::default(),
    };
    let opts = BatchOptions {
        checkpoints: req.checkpoints.max(2),
        ..BatchOptions::default()
    };
    let result = run_batch(
        &template,
        &replicate_seeds(req.master_seed, req.seeds),
        &req.policies,
        &opts,
    )
    .map_err(|e| e.to_string())?;
    let response = SimulateResponse {
        checkpoints: result.checkpoints.clone(),
        curves: result
            .aggregates
            .iter()
            .map(|a| Curve {
                policy: a.policy,
                mean: a.mean_average.clone(),
                std: a.std_average.clone(),
            })
            .collect(),
        bound: result.bound_average.clone(),
    };
    serde_json::to_string(&response).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphResponse {
    pub arms: usize,
    pub edges: Vec<(usize, usize)>,
    pub cliques: Vec<Vec<usize>>,
}

pub fn graph_json(arms: usize, p: f64, seed: u64) -> Result<String, String> {
    if arms == 0 || arms > MAX_ARMS {
        return Err(format!("arms must be in 1..={MAX_ARMS}"));
    }
    let g = RelationGraph::erdos_renyi(arms, p, seed).map_err(|e| e.to_string())?;
    let cover = greedy_clique_cover(&g);
    let response = GraphResponse {
        arms,
        edges: g.edges(),
        cliques: cover.cliques,
    };
    serde_json::to_string(&response).map_err(|e| e.to_string())
}

/// Bound for `scenario` at horizon `n`. `extra` is the clique count for
/// sso/cso and N = max |Y| for csr; `actions` is |F| for cso and the
/// MOSS comparison.
pub fn bound_value(
    scenario: &str,
    n: u64,
    arms: u64,
    extra: u64,
    actions: u64,
) -> Result<f64, String> {
    let scenario: Scenario = scenario
        .parse()
        .map_err(|e: netbandit::Error| e.to_string())?;
    if n == 0 || arms == 0 {
        return Err("n and K must be positive".into());
    }
    Ok(match scenario {
        Scenario::Sso => bound_sso(n, arms, extra as usize),
        Scenario::Cso => bound_cso(n, actions, extra as usize),
        Scenario::Ssr => bound_ssr(n, arms),
        Scenario::Csr => bound_csr(n, arms, extra).map_err(|e| e.to_string())?,
    })
}

#[wasm_bindgen]
pub fn simulate(request: &str) -> Result<String, JsError> {
    simulate_json(request).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn graph(arms: u32, p: f64, seed: u32) -> Result<String, JsError> {
    graph_json(arms as usize, p, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound(scenario: &str, n: u32, arms: u32, extra: u32, actions: u32) -> Result<f64, JsError> {
    bound_value(
        scenario,
        n.into(),
        arms.into(),
        extra.into(),
        actions.into(),
    )
    .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn moss_bound(n: u32, actions: u32) -> f64 {
    bound_moss(n.into(), actions.into())
}
