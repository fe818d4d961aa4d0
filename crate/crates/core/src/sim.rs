//! Episode runner and paired Monte-Carlo batches.
//!
//! A replicate seed fixes the environment (graph draw, means, reward
//! stream). Each policy gets its own tie-break stream keyed by the policy
//! name, so every policy in a batch faces the same rewards and adding a
//! policy never perturbs the others.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::env::{
    compute_optimum, parse_means, uniform_means, BanditEnv, RewardDist, Scenario, ScenarioOptimum,
};
use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::policies::{
    build_policy, Observation, Policy, PolicyContext, PolicyName, PolicyOptions, Snapshot,
};
use crate::regret::{scenario_bound, RegretTrace};
use crate::rng::{derive_seed, domain, name_key, Fnv1a, Rng, SeedableRng};
use crate::strategies::{
    enumerate_feasible_capped, Constraint, EdgeRule, StrategyGraph, StrategySet,
    DEFAULT_STRATEGY_CAP,
};

/// Relation-graph recipe: `er:<p>`, `complete`, `path`, `empty`, `file:<path>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GraphSpec {
    /// G(K, p); without a pinned seed the graph is redrawn per replicate.
    Er {
        p: f64,
        seed: Option<u64>,
    },
    Complete,
    Path,
    Empty,
    File {
        path: String,
    },
}

impl GraphSpec {
    pub fn build(&self, arms: usize, replicate: u64) -> Result<RelationGraph> {
        let g = match self {
            GraphSpec::Er { p, seed } => {
                let seed = seed.unwrap_or_else(|| derive_seed(replicate, domain::GRAPH, 0));
                RelationGraph::erdos_renyi(arms, *p, seed)?
            }
            GraphSpec::Complete => RelationGraph::complete(arms),
            GraphSpec::Path => RelationGraph::path(arms),
            GraphSpec::Empty => RelationGraph::empty(arms),
            GraphSpec::File { path } => {
                RelationGraph::parse_edge_list(&std::fs::read_to_string(path)?)?
            }
        };
        if g.num_arms() != arms {
            return Err(Error::input(format!(
                "graph has {} arms, configuration says {arms}",
                g.num_arms()
            )));
        }
        Ok(g)
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("er", p)) => {
                let (p, seed) = match p.split_once('@') {
                    Some((p, seed)) => (p, Some(seed)),
                    None => (p, None),
                };
                let p: f64 = p
                    .parse()
                    .map_err(|_| Error::input(format!("bad edge probability in {s:?}")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::input(format!("edge probability {p} outside [0,1]")));
                }
                let seed = seed
                    .map(|v| v.parse::<u64>())
                    .transpose()
                    .map_err(|_| Error::input(format!("bad graph seed in {s:?}")))?;
                Ok(GraphSpec::Er { p, seed })
            }
            Some(("file", path)) => Ok(GraphSpec::File {
                path: path.to_string(),
            }),
            None if s == "complete" => Ok(GraphSpec::Complete),
            None if s == "path" => Ok(GraphSpec::Path),
            None if s == "empty" => Ok(GraphSpec::Empty),
            _ => Err(Error::input(format!("unknown graph spec {s:?}"))),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Er { p, seed: None } => write!(f, "er:{p}"),
            GraphSpec::Er { p, seed: Some(s) } => write!(f, "er:{p}@{s}"),
            GraphSpec::Complete => f.write_str("complete"),
            GraphSpec::Path => f.write_str("path"),
            GraphSpec::Empty => f.write_str("empty"),
            GraphSpec::File { path } => write!(f, "file:{path}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MeansSpec {
    /// i.i.d. U[0,1]; the seed defaults to one derived from the replicate.
    Uniform {
        seed: Option<u64>,
    },
    Fixed {
        values: Vec<f64>,
    },
    File {
        path: String,
    },
}

impl MeansSpec {
    pub fn build(&self, arms: usize, replicate: u64) -> Result<Vec<f64>> {
        let means = match self {
            MeansSpec::Uniform { seed } => {
                let seed = seed.unwrap_or_else(|| derive_seed(replicate, domain::MEANS, 0));
                uniform_means(arms, seed)
            }
            MeansSpec::Fixed { values } => values.clone(),
            MeansSpec::File { path } => parse_means(&std::fs::read_to_string(path)?)?,
        };
        if means.len() != arms {
            return Err(Error::input(format!(
                "{} means for {arms} arms",
                means.len()
            )));
        }
        Ok(means)
    }
}

/// `uniform`, `uniform@<seed>`, `file:<path>`, or a comma list of means.
impl FromStr for MeansSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            return Ok(MeansSpec::Uniform { seed: None });
        }
        if let Some(seed) = s.strip_prefix("uniform@") {
            let seed = seed
                .parse()
                .map_err(|_| Error::input(format!("bad means seed in {s:?}")))?;
            return Ok(MeansSpec::Uniform { seed: Some(seed) });
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(MeansSpec::File {
                path: path.to_string(),
            });
        }
        let values = parse_means(&s.replace(',', "\n"))
            .map_err(|e| Error::input(format!("bad means spec {s:?}: {e}")))?;
        if values.is_empty() {
            return Err(Error::input("empty means spec"));
        }
        Ok(MeansSpec::Fixed { values })
    }
}

impl fmt::Display for MeansSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeansSpec::Uniform { seed: None } => f.write_str("uniform"),
            MeansSpec::Uniform { seed: Some(s) } => write!(f, "uniform@{s}"),
            MeansSpec::File { path } => write!(f, "file:{path}"),
            MeansSpec::Fixed { values } => {
                let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvSpec {
    pub dist: RewardDist,
    pub means: MeansSpec,
}

impl Default for EnvSpec {
    fn default() -> Self {
        EnvSpec {
            dist: RewardDist::Bernoulli,
            means: MeansSpec::Uniform { seed: None },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySpec {
    pub constraint: Constraint,
    #[serde(default)]
    pub edge_rule: EdgeRule,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_STRATEGY_CAP
}

impl StrategySpec {
    pub fn new(constraint: Constraint) -> Self {
        StrategySpec {
            constraint,
            edge_rule: EdgeRule::Mutual,
            cap: DEFAULT_STRATEGY_CAP,
        }
    }
}

/// One episode: a scenario, a policy and a replicate seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeConfig {
    pub scenario: Scenario,
    pub policy: PolicyName,
    pub horizon: u64,
    pub arms: usize,
    pub graph: GraphSpec,
    pub strategies: Option<StrategySpec>,
    pub env: EnvSpec,
    /// Replicate seed; every other stream is derived from it.
    pub seed: u64,
    #[serde(default)]
    pub options: PolicyOptions,
}

impl EpisodeConfig {
    pub fn validate(&self) -> Result<()> {
        self.validate_instance()?;
        if !self.policy.supports(self.scenario) {
            return Err(Error::input(format!(
                "policy {} cannot run the {} scenario",
                self.policy, self.scenario
            )));
        }
        Ok(())
    }

    /// Checks everything except policy/scenario compatibility.
    pub fn validate_instance(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::input("horizon must be at least 1"));
        }
        if self.arms == 0 {
            return Err(Error::input("need at least one arm"));
        }
        if self.scenario.is_combinatorial() && self.strategies.is_none() {
            return Err(Error::input(format!(
                "scenario {} needs a strategy constraint",
                self.scenario
            )));
        }
        Ok(())
    }

    pub fn tie_break_seed(&self) -> u64 {
        derive_seed(self.seed, domain::TIE_BREAK, name_key(self.policy.as_str()))
    }

    pub fn reward_seed(&self) -> u64 {
        derive_seed(self.seed, domain::REWARDS, 0)
    }
}

/// A fully resolved problem: everything an episode needs except the policy.
#[derive(Debug, Clone)]
pub struct Instance {
    pub scenario: Scenario,
    pub horizon: u64,
    pub graph: Arc<RelationGraph>,
    pub env: BanditEnv,
    pub strategies: Option<Arc<StrategySet>>,
    pub strategy_graph: Option<Arc<StrategyGraph>>,
    pub optimum: ScenarioOptimum,
}

impl Instance {
    pub fn build(cfg: &EpisodeConfig) -> Result<Self> {
        cfg.validate_instance()?;
        let graph = cfg.graph.build(cfg.arms, cfg.seed)?;
        let means = cfg.env.means.build(cfg.arms, cfg.seed)?;
        let env = BanditEnv::new(means, cfg.env.dist, cfg.reward_seed())?;
        let (strategies, strategy_graph) = match (&cfg.strategies, cfg.scenario.is_combinatorial())
        {
            (Some(spec), true) => {
                let fs = enumerate_feasible_capped(&graph, &spec.constraint, spec.cap)?;
                let sg = (cfg.scenario == Scenario::Cso)
                    .then(|| Arc::new(StrategyGraph::build(&fs, spec.edge_rule)));
                (Some(Arc::new(fs)), sg)
            }
            _ => (None, None),
        };
        let optimum = compute_optimum(env.means(), &graph, strategies.as_deref(), cfg.scenario)?;
        Ok(Instance {
            scenario: cfg.scenario,
            horizon: cfg.horizon,
            graph: Arc::new(graph),
            env,
            strategies,
            strategy_graph,
            optimum,
        })
    }

    pub fn policy_context(&self, options: PolicyOptions) -> PolicyContext {
        PolicyContext {
            scenario: self.scenario,
            horizon: self.horizon,
            graph: self.graph.clone(),
            strategies: self.strategies.clone(),
            strategy_graph: self.strategy_graph.clone(),
            options,
        }
    }

    /// Arms revealed by playing `action`, ascending.
    pub fn visible_arms(&self, action: usize) -> Vec<usize> {
        match self.scenario {
            Scenario::Sso | Scenario::Ssr => self.graph.closed(action).to_vec(),
            Scenario::Csr => self.fs().y_set(action).to_vec(),
            Scenario::Cso => {
                let fs = self.fs();
                let sg = self
                    .strategy_graph
                    .as_ref()
                    .expect("cso instance has a strategy graph");
                let mut v: Vec<usize> = sg
                    .closed(action)
                    .iter()
                    .flat_map(|&y| fs.strategy(y))
                    .copied()
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    /// Reward collected for `action` given this round's reward vector.
    pub fn collected_reward(&self, action: usize, rewards: &[f64]) -> f64 {
        let sum = |set: &[usize]| set.iter().map(|&i| rewards[i]).sum::<f64>();
        match self.scenario {
            Scenario::Sso => rewards[action],
            Scenario::Ssr => sum(self.graph.closed(action)),
            Scenario::Cso => sum(self.fs().strategy(action)),
            Scenario::Csr => sum(self.fs().y_set(action)),
        }
    }

    fn fs(&self) -> &StrategySet {
        self.strategies
            .as_deref()
            .expect("combinatorial instance has strategies")
    }

    /// Regret bound at horizon `n` for this instance's scenario.
    pub fn bound(&self, n: u64) -> Result<f64> {
        match self.scenario {
            Scenario::Cso => {
                let sg = self
                    .strategy_graph
                    .as_ref()
                    .expect("cso instance has a strategy graph");
                scenario_bound(
                    self.scenario,
                    n,
                    &sg.to_relation_graph(),
                    &self.optimum,
                    None,
                )
            }
            Scenario::Csr => scenario_bound(
                self.scenario,
                n,
                &self.graph,
                &self.optimum,
                Some(self.fs().max_y()),
            ),
            _ => scenario_bound(self.scenario, n, &self.graph, &self.optimum, None),
        }
    }
}

/// What one round looked like.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub round: u64,
    pub action: usize,
    pub visible: usize,
    pub reward: f64,
}

/// Drives one policy through one instance a round at a time.
pub struct EpisodeRunner<'a> {
    instance: &'a Instance,
    policy: Box<dyn Policy>,
    rng: Rng,
    trace: RegretTrace,
    rewards: Vec<f64>,
    checksum: Fnv1a,
    visibility_total: u64,
}

impl<'a> EpisodeRunner<'a> {
    pub fn new(instance: &'a Instance, cfg: &EpisodeConfig) -> Result<Self> {
        let policy = build_policy(cfg.policy, &instance.policy_context(cfg.options))?;
        Ok(Self::with_policy(instance, policy, cfg.tie_break_seed()))
    }

    pub fn with_policy(instance: &'a Instance, policy: Box<dyn Policy>, tie_seed: u64) -> Self {
        EpisodeRunner {
            instance,
            policy,
            rng: Rng::seed_from_u64(tie_seed),
            trace: RegretTrace::new(
                instance.scenario,
                instance.horizon,
                instance.optimum.optimal_value,
            ),
            rewards: vec![0.0; instance.env.num_arms()],
            checksum: Fnv1a::default(),
            visibility_total: 0,
        }
    }

    pub fn round(&self) -> u64 {
        self.policy.round()
    }

    pub fn is_done(&self) -> bool {
        self.policy.round() >= self.instance.horizon
    }

    pub fn step(&mut self) -> Result<StepInfo> {
        let t = self.policy.round() + 1;
        let action = self.policy.select(&mut self.rng);
        self.instance.env.sample_round_into(t, &mut self.rewards);
        for &x in &self.rewards {
            self.checksum.write_f64(x);
        }
        let arms = self.instance.visible_arms(action);
        let values = arms.iter().map(|&i| self.rewards[i]).collect();
        let reward = self.instance.collected_reward(action, &self.rewards);
        let obs = Observation {
            round: t,
            arms,
            values,
            reward,
        };
        self.visibility_total += obs.arms.len() as u64;
        self.policy
            .update(action, &obs)
            .map_err(|e| e.at_round(t))?;
        self.trace.record(&self.instance.optimum, action, reward)?;
        Ok(StepInfo {
            round: t,
            action,
            visible: obs.arms.len(),
            reward,
        })
    }

    pub fn snapshot(&self) -> Snapshot {
        self.policy.snapshot()
    }

    pub fn trace(&self) -> &RegretTrace {
        &self.trace
    }

    pub fn finish(mut self) -> Result<Episode> {
        while !self.is_done() {
            self.step()?;
        }
        Ok(Episode {
            snapshot: self.policy.snapshot(),
            trace: self.trace,
            env_checksum: self.checksum.finish(),
            visibility_total: self.visibility_total,
        })
    }
}

/// A completed episode.
#[derive(Debug, Clone)]
pub struct Episode {
    pub trace: RegretTrace,
    /// FNV-1a over every reward drawn, in draw order.
    pub env_checksum: u64,
    /// Σ_t |visible set at t|.
    pub visibility_total: u64,
    pub snapshot: Snapshot,
}

pub fn run_episode(cfg: &EpisodeConfig) -> Result<Episode> {
    let instance = Instance::build(cfg)?;
    EpisodeRunner::new(&instance, cfg)?.finish()
}

/// Up to `count` log-spaced rounds in [1, n], always including 1 and n.
pub fn log_checkpoints(n: u64, count: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let count = count.max(2);
    let ln = (n as f64).ln();
    let mut out: Vec<u64> = (0..count)
        .map(|k| {
            let t = (ln * k as f64 / (count - 1) as f64).exp().round() as u64;
            t.clamp(1, n)
        })
        .collect();
    out.push(n);
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegretMeasure {
    #[default]
    Pseudo,
    Realized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchOptions {
    pub measure: RegretMeasure,
    pub checkpoints: usize,
    /// Record every round instead of log-spaced checkpoints.
    pub full_traces: bool,
    /// Worker count; `None` uses all cores.
    pub threads: Option<usize>,
    /// Compute the regret bound at each checkpoint.
    pub bounds: bool,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions {
            measure: RegretMeasure::Pseudo,
            checkpoints: 200,
            full_traces: false,
            threads: None,
            bounds: true,
        }
    }
}

/// Checkpoint values of one (policy, seed) episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub policy: PolicyName,
    pub seed: u64,
    pub env_checksum: u64,
    pub instant: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub average: Vec<f64>,
    pub final_pseudo: f64,
    pub final_realized: f64,
    pub visibility_total: u64,
    /// Regret bound for this seed's environment at each checkpoint.
    pub bound: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub policy: PolicyName,
    pub mean_cumulative: Vec<f64>,
    pub std_cumulative: Vec<f64>,
    pub mean_average: Vec<f64>,
    pub std_average: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchResult {
    pub scenario: Scenario,
    pub horizon: u64,
    pub measure: RegretMeasure,
    pub policies: Vec<PolicyName>,
    pub seeds: Vec<u64>,
    pub checkpoints: Vec<u64>,
    /// Ordered by policy, then seed.
    pub runs: Vec<RunSummary>,
    pub aggregates: Vec<Aggregate>,
    /// Mean over seeds of the bound divided by t, per checkpoint.
    pub bound_average: Option<Vec<f64>>,
}

impl BatchResult {
    pub fn runs_for(&self, policy: PolicyName) -> impl Iterator<Item = &RunSummary> {
        self.runs.iter().filter(move |r| r.policy == policy)
    }

    pub fn aggregate(&self, policy: PolicyName) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.policy == policy)
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn summarize(
    policy: PolicyName,
    seed: u64,
    episode: &Episode,
    checkpoints: &[u64],
    measure: RegretMeasure,
    bound: Option<Vec<f64>>,
) -> RunSummary {
    let tr = &episode.trace;
    let (inst, cum) = match measure {
        RegretMeasure::Pseudo => (&tr.instant_pseudo, &tr.cum_pseudo),
        RegretMeasure::Realized => (&tr.instant_realized, &tr.cum_realized),
    };
    let at = |v: &Vec<f64>| {
        checkpoints
            .iter()
            .map(|&t| v[(t - 1) as usize])
            .collect::<Vec<_>>()
    };
    let cumulative = at(cum);
    let average = cumulative
        .iter()
        .zip(checkpoints)
        .map(|(c, &t)| c / t as f64)
        .collect();
    RunSummary {
        policy,
        seed,
        env_checksum: episode.env_checksum,
        instant: at(inst),
        cumulative,
        average,
        final_pseudo: tr.final_pseudo(),
        final_realized: tr.final_realized(),
        visibility_total: episode.visibility_total,
        bound,
    }
}

fn parallel_map<T, U, F>(items: Vec<T>, threads: Option<usize>, f: F) -> Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Result<U> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
        pool.install(|| items.into_par_iter().map(f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        items.into_iter().map(f).collect()
    }
}

/// Run every policy on every replicate seed of `template`. Episodes sharing
/// a seed share one resolved [`Instance`].
pub fn run_batch(
    template: &EpisodeConfig,
    seeds: &[u64],
    policies: &[PolicyName],
    opts: &BatchOptions,
) -> Result<BatchResult> {
    let checkpoints = if opts.full_traces {
        (1..=template.horizon).collect()
    } else {
        log_checkpoints(template.horizon, opts.checkpoints)
    };
    for &p in policies {
        EpisodeConfig {
            policy: p,
            ..template.clone()
        }
        .validate()?;
    }

    let instances: Vec<Arc<Instance>> = parallel_map(seeds.to_vec(), opts.threads, |seed| {
        Instance::build(&EpisodeConfig {
            seed,
            ..template.clone()
        })
        .map(Arc::new)
    })?;

    let bounds: Vec<Option<Vec<f64>>> = if opts.bounds {
        parallel_map(instances.clone(), opts.threads, |inst| {
            checkpoints
                .iter()
                .map(|&t| inst.bound(t))
                .collect::<Result<Vec<_>>>()
                .map(Some)
        })?
    } else {
        vec![None; seeds.len()]
    };

    let jobs: Vec<(PolicyName, usize)> = policies
        .iter()
        .flat_map(|&p| (0..seeds.len()).map(move |s| (p, s)))
        .collect();
    let runs = parallel_map(jobs, opts.threads, |(policy, s)| {
        let cfg = EpisodeConfig {
            policy,
            seed: seeds[s],
            ..template.clone()
        };
        let episode = EpisodeRunner::new(&instances[s], &cfg)?.finish()?;
        Ok(summarize(
            policy,
            seeds[s],
            &episode,
            &checkpoints,
            opts.measure,
            bounds[s].clone(),
        ))
    })?;

    let aggregates = policies
        .iter()
        .map(|&policy| {
            let mine: Vec<&RunSummary> = runs.iter().filter(|r| r.policy == policy).collect();
            let column = |k: usize, pick: fn(&RunSummary) -> &Vec<f64>| {
                mean_std(&mine.iter().map(|r| pick(r)[k]).collect::<Vec<_>>())
            };
            let (mut mc, mut sc, mut ma, mut sa) = (vec![], vec![], vec![], vec![]);
            for k in 0..checkpoints.len() {
                let (m, s) = column(k, |r| &r.cumulative);
                mc.push(m);
                sc.push(s);
                let (m, s) = column(k, |r| &r.average);
                ma.push(m);
                sa.push(s);
            }
            Aggregate {
                policy,
                mean_cumulative: mc,
                std_cumulative: sc,
                mean_average: ma,
                std_average: sa,
            }
        })
        .collect();

    let bound_average = (opts.bounds && !seeds.is_empty()).then(|| {
        checkpoints
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                let total: f64 = bounds.iter().flatten().map(|b| b[k]).sum();
                total / seeds.len() as f64 / t as f64
            })
            .collect()
    });

    Ok(BatchResult {
        scenario: template.scenario,
        horizon: template.horizon,
        measure: opts.measure,
        policies: policies.to_vec(),
        seeds: seeds.to_vec(),
        checkpoints,
        runs,
        aggregates,
        bound_average,
    })
}

/// Replicate seeds derived from a master seed.
pub fn replicate_seeds(master: u64, count: usize) -> Vec<u64> {
    (0..count as u64)
        .map(|i| derive_seed(master, domain::REPLICATE, i))
        .collect()
}
