//! Front end for the `netbandit` binary.

pub mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netbandit::env::{RewardDist, Scenario};
use netbandit::graph::{greedy_clique_cover, RelationGraph};
use netbandit::policies::{Clock, CsoConstant, PolicyName, PolicyOptions};
use netbandit::presets::{Preset, DEFAULT_MASTER_SEED};
use netbandit::regret::{bound_cso, bound_csr, bound_moss, bound_sso, bound_ssr};
use netbandit::report::{emit_csv, emit_plot_script, format_sig10};
use netbandit::sim::{
    replicate_seeds, run_batch, BatchOptions, EnvSpec, EpisodeConfig, GraphSpec, Instance,
    MeansSpec, RegretMeasure, StrategySpec,
};
use netbandit::strategies::{
    build_strategy_graph, enumerate_feasible_capped, Constraint, EdgeRule, DEFAULT_STRATEGY_CAP,
};

use manifest::{BatchPlan, RunManifest};

#[derive(Debug, Parser)]
#[command(
    name = "netbandit",
    version,
    about = "Bandits with networked side observations and side rewards"
)]
pub struct Cli {
    /// Worker threads for batch runs (default: all cores).
    #[arg(long, global = true, env = "NETBANDIT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a Monte-Carlo batch and write CSV, plot script and manifest.
    Run(RunArgs),
    /// Print the regret bound for a configuration.
    Bounds(BoundsArgs),
    /// Run a named experiment.
    Preset(PresetArgs),
    /// Generate or inspect relation graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Re-run the batch recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Output directory (default: the one recorded in the manifest).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MeasureArg {
    Pseudo,
    Realized,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ClockArg {
    Anytime,
    Horizon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CsoConstantArg {
    Strategies,
    Arms,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EdgeRuleArg {
    Mutual,
    OneWay,
}

fn parse_via<T: FromStr<Err = netbandit::Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: netbandit::Error| e.to_string())
}

/// Instance description shared by `run` and `bounds`.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(long, value_parser = parse_via::<Scenario>)]
    pub scenario: Scenario,
    #[arg(long)]
    pub arms: usize,
    #[arg(long)]
    pub horizon: u64,
    /// `er:<p>[@seed]`, `complete`, `path`, `empty`, `file:<path>`.
    #[arg(long, default_value = "er:0.3", value_parser = parse_via::<GraphSpec>)]
    pub graph: GraphSpec,
    /// Feasible set for cso/csr: `all:M`, `exact:M`, `independent:M`.
    #[arg(long, value_parser = Constraint::parse)]
    pub strategies: Option<Constraint>,
    #[arg(long, value_enum, default_value = "mutual")]
    pub edge_rule: EdgeRuleArg,
    #[arg(long, default_value_t = DEFAULT_STRATEGY_CAP)]
    pub strategy_cap: usize,
    /// `bernoulli`, `uniform-interval`, `point-mass`.
    #[arg(long, default_value = "bernoulli", value_parser = parse_via::<RewardDist>)]
    pub dist: RewardDist,
    /// `uniform[@seed]`, `file:<path>`, or a comma list.
    #[arg(long, default_value = "uniform", value_parser = parse_via::<MeansSpec>)]
    pub means: MeansSpec,
}

impl InstanceArgs {
    fn template(&self, policy: PolicyName, options: PolicyOptions) -> EpisodeConfig {
        EpisodeConfig {
            scenario: self.scenario,
            policy,
            horizon: self.horizon,
            arms: self.arms,
            graph: self.graph.clone(),
            strategies: self.strategies.clone().map(|constraint| StrategySpec {
                constraint,
                edge_rule: match self.edge_rule {
                    EdgeRuleArg::Mutual => EdgeRule::Mutual,
                    EdgeRuleArg::OneWay => EdgeRule::OneWay,
                },
                cap: self.strategy_cap,
            }),
            env: EnvSpec {
                dist: self.dist,
                means: self.means.clone(),
            },
            seed: 0,
            options,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Comma-separated policy names.
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_via::<PolicyName>)]
    pub policy: Vec<PolicyName>,
    /// Number of replicate seeds.
    #[arg(long, default_value_t = 20)]
    pub seeds: usize,
    #[arg(long, default_value_t = DEFAULT_MASTER_SEED)]
    pub master_seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub ablation: AblationArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Record every round instead of log-spaced checkpoints.
    #[arg(long)]
    pub full_traces: bool,
    #[arg(long, default_value_t = 200)]
    pub checkpoints: usize,
    #[arg(long, value_enum, default_value = "pseudo")]
    pub measure: MeasureArg,
}

impl OutputArgs {
    fn batch_options(&self, threads: Option<usize>) -> BatchOptions {
        BatchOptions {
            measure: match self.measure {
                MeasureArg::Pseudo => RegretMeasure::Pseudo,
                MeasureArg::Realized => RegretMeasure::Realized,
            },
            checkpoints: self.checkpoints,
            full_traces: self.full_traces,
            threads,
            bounds: true,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct AblationArgs {
    /// Use the horizon n instead of t in DFL exploration terms.
    #[arg(long, value_enum, default_value = "anytime")]
    pub clock: ClockArg,
    /// Constant in the DFL-CSO exploration term.
    #[arg(long, value_enum, default_value = "strategies")]
    pub cso_constant: CsoConstantArg,
    /// Feed DFL-SSR unnormalized side rewards.
    #[arg(long)]
    pub no_ssr_normalize: bool,
}

impl AblationArgs {
    fn options(&self) -> PolicyOptions {
        PolicyOptions {
            clock: match self.clock {
                ClockArg::Anytime => Clock::Anytime,
                ClockArg::Horizon => Clock::Horizon,
            },
            cso_constant: match self.cso_constant {
                CsoConstantArg::Strategies => CsoConstant::StrategyCount,
                CsoConstantArg::Arms => CsoConstant::ArmCount,
            },
            ssr_normalize: !self.no_ssr_normalize,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Seed for the graph and means draw (sso/cso need the gaps).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this clique count instead of covering the instance (sso/cso).
    #[arg(long)]
    pub cliques: Option<usize>,
    /// Also print the MOSS bound over the same action set.
    #[arg(long)]
    pub moss: bool,
}

#[derive(Debug, Args)]
pub struct PresetArgs {
    /// Preset name; omit with --list.
    #[arg(value_parser = parse_via::<Preset>, required_unless_present = "list")]
    pub name: Option<Preset>,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub seeds: Option<usize>,
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub master_seed: Option<u64>,
    /// Output directory (default: out/<preset>).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Write a relation graph as an edge list.
    Generate {
        #[arg(long)]
        arms: usize,
        #[arg(long, default_value = "er:0.3", value_parser = parse_via::<GraphSpec>)]
        graph: GraphSpec,
        /// Replicate seed for unpinned ER draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize an edge-list file.
    Inspect {
        path: PathBuf,
        /// Also enumerate a feasible set and its strategy graph.
        #[arg(long, value_parser = Constraint::parse)]
        strategies: Option<Constraint>,
        #[arg(long, default_value_t = DEFAULT_STRATEGY_CAP)]
        strategy_cap: usize,
    },
}

/// Exit status for a failed command: 1 for bad input, 2 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<netbandit::Error>() {
        Some(netbandit::Error::Input(_)) => 1,
        _ => 2,
    }
}

/// Run a parsed command line, writing human output to `out`.
pub fn execute(cli: Cli, out: &mut dyn std::io::Write) -> Result<()> {
    let threads = cli.threads;
    if threads == Some(0) {
        return Err(netbandit::Error::Input("--threads must be at least 1".into()).into());
    }
    let text = match cli.command {
        Command::Run(args) => cmd_run(args, threads)?,
        Command::Bounds(args) => cmd_bounds(args)?,
        Command::Preset(args) => cmd_preset(args, threads)?,
        Command::Graph(cmd) => cmd_graph(cmd)?,
        Command::Replay { manifest, out } => {
            let m = RunManifest::load(&manifest)?;
            let plan = m.plan()?;
            let dir = out.unwrap_or_else(|| PathBuf::from(&m.output_dir));
            let opts = BatchOptions {
                threads,
                ..m.batch.clone()
            };
            write_batch(&plan, &opts, &dir, m.master_seed)?
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_run(args: RunArgs, threads: Option<usize>) -> Result<String> {
    let plan = BatchPlan {
        template: args
            .instance
            .template(args.policy[0], args.ablation.options()),
        seeds: replicate_seeds(args.master_seed, args.seeds),
        policies: args.policy,
    };
    let opts = args.output.batch_options(threads);
    write_batch(&plan, &opts, &args.out, args.master_seed)
}

/// Execute a plan and write `regret.csv`, `regret.gp` and the manifest.
pub fn write_batch(
    plan: &BatchPlan,
    opts: &BatchOptions,
    dir: &Path,
    master_seed: u64,
) -> Result<String> {
    let result = run_batch(&plan.template, &plan.seeds, &plan.policies, opts)?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv = dir.join("regret.csv");
    let plot = dir.join("regret.gp");
    emit_csv(&result, &csv)?;
    emit_plot_script(&result, &plot)?;
    RunManifest::new(plan, opts, dir, master_seed).save(&dir.join(manifest::FILE_NAME))?;

    let mut s = String::new();
    let n = result.horizon;
    writeln!(
        s,
        "{} scenario, n = {n}, {} seeds",
        result.scenario,
        result.seeds.len()
    )?;
    for agg in &result.aggregates {
        let (Some(m), Some(sd)) = (agg.mean_average.last(), agg.std_average.last()) else {
            continue;
        };
        writeln!(
            s,
            "  {:<8} avg regret at n: {} ± {}",
            agg.policy.as_str(),
            format_sig10(*m),
            format_sig10(*sd)
        )?;
    }
    if let Some(b) = result.bound_average.as_ref().and_then(|b| b.last()) {
        writeln!(s, "  bound/n: {}", format_sig10(*b))?;
    }
    writeln!(
        s,
        "wrote {}, {}, {}",
        csv.display(),
        plot.display(),
        dir.join(manifest::FILE_NAME).display()
    )?;
    Ok(s)
}

fn cmd_bounds(args: BoundsArgs) -> Result<String> {
    let a = &args.instance;
    let n = a.horizon;
    let k = a.arms as u64;
    let mut s = String::new();
    let needs_instance = matches!(a.scenario, Scenario::Sso | Scenario::Cso | Scenario::Csr)
        && !(args.cliques.is_some() && a.scenario == Scenario::Sso);
    let instance = if needs_instance {
        let mut cfg = a.template(PolicyName::Moss, PolicyOptions::default());
        cfg.seed = args.seed;
        Some(Instance::build(&cfg)?)
    } else {
        None
    };
    let (bound, actions) = match (a.scenario, args.cliques) {
        (Scenario::Ssr, _) => (bound_ssr(n, k), k),
        (Scenario::Sso, Some(c)) => (bound_sso(n, k, c), k),
        (Scenario::Cso, Some(c)) => {
            let f = instance
                .as_ref()
                .and_then(|i| i.strategies.as_ref())
                .map_or(0, |f| f.len());
            (bound_cso(n, f as u64, c), f as u64)
        }
        (Scenario::Csr, _) => {
            let fs = instance
                .as_ref()
                .and_then(|i| i.strategies.clone())
                .context("csr needs --strategies")?;
            (bound_csr(n, k, fs.max_y() as u64)?, fs.len() as u64)
        }
        (_, None) => {
            let inst = instance.as_ref().expect("built above");
            (inst.bound(n)?, inst.optimum.num_actions() as u64)
        }
    };
    writeln!(s, "{}", format_sig10(bound))?;
    if args.moss {
        writeln!(s, "moss {}", format_sig10(bound_moss(n, actions)))?;
    }
    Ok(s)
}

fn cmd_preset(args: PresetArgs, threads: Option<usize>) -> Result<String> {
    if args.list {
        let mut s = String::new();
        for p in Preset::ALL {
            let e = p.experiment();
            let t = &e.template;
            writeln!(
                s,
                "{:<16} {} K={} graph={} n={} seeds={} policies={}",
                p.as_str(),
                t.scenario,
                t.arms,
                t.graph,
                t.horizon,
                e.replicates,
                e.policies
                    .iter()
                    .map(|p| p.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
        }
        return Ok(s);
    }
    let preset = args.name.expect("clap requires a name without --list");
    let mut exp = preset.experiment();
    if let Some(r) = args.seeds {
        exp.replicates = r;
    }
    if let Some(n) = args.horizon {
        exp.template.horizon = n;
    }
    if let Some(m) = args.master_seed {
        exp.master_seed = m;
    }
    let plan = BatchPlan {
        seeds: exp.seeds(),
        template: exp.template,
        policies: exp.policies,
    };
    let dir = args
        .out
        .unwrap_or_else(|| Path::new("out").join(preset.as_str()));
    write_batch(
        &plan,
        &args.output.batch_options(threads),
        &dir,
        exp.master_seed,
    )
}

fn cmd_graph(cmd: GraphCommand) -> Result<String> {
    match cmd {
        GraphCommand::Generate {
            arms,
            graph,
            seed,
            out,
        } => {
            let g = graph.build(arms, seed)?;
            let text = g.to_edge_list();
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    Ok(format!(
                        "wrote {} ({} arms, {} edges)\n",
                        path.display(),
                        arms,
                        g.num_edges()
                    ))
                }
                None => Ok(text),
            }
        }
        GraphCommand::Inspect {
            path,
            strategies,
            strategy_cap,
        } => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let g = RelationGraph::parse_edge_list(&text)?;
            inspect(&g, strategies.as_ref(), strategy_cap)
        }
    }
}

fn inspect(g: &RelationGraph, strategies: Option<&Constraint>, cap: usize) -> Result<String> {
    let k = g.num_arms();
    let degrees: Vec<usize> = (0..k).map(|i| g.degree(i)).collect();
    let mut s = String::new();
    writeln!(s, "arms: {k}")?;
    writeln!(s, "edges: {}", g.num_edges())?;
    if k > 0 {
        let mean = degrees.iter().sum::<usize>() as f64 / k as f64;
        writeln!(
            s,
            "degree: min {} mean {} max {}",
            degrees.iter().min().unwrap(),
            format_sig10(mean),
            degrees.iter().max().unwrap()
        )?;
    }
    let cover = greedy_clique_cover(g);
    writeln!(s, "greedy clique cover: {}", cover.size())?;
    if let Some(c) = strategies {
        let fs = enumerate_feasible_capped(g, c, cap)?;
        let sg = build_strategy_graph(&fs);
        writeln!(s, "strategies: {}", fs.len())?;
        writeln!(s, "max strategy size M: {}", fs.max_size())?;
        writeln!(s, "max |Y| N: {}", fs.max_y())?;
        writeln!(
            s,
            "strategy graph edges: {}",
            sg.to_relation_graph().num_edges()
        )?;
    }
    Ok(s)
}
