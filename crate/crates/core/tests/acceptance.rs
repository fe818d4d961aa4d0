//! Acceptance suite. Runs each check at its fixed tolerance and
//! prints one PASS/FAIL line per check; exits non-zero on any failure.
//!
//! `cargo test -p netbandit --test acceptance`

mod common;

use std::process::ExitCode;
use std::time::Instant;

use netbandit::env::{compute_optimum, BanditEnv, RewardDist, Scenario};
use netbandit::graph::RelationGraph;
use netbandit::policies::index::{csr_arm_score, moss_index, sso_index, ssr_index};
use netbandit::policies::{PolicyName, PolicyOptions};
use netbandit::presets::Preset;
use netbandit::regret::{bound_csr, bound_sso, bound_ssr, clique_count_for_bound, ALPHA};
use netbandit::report::csv_string;
use netbandit::rng::{Rng, SeedableRng};
use netbandit::sim::{
    replicate_seeds, run_batch, run_episode, BatchOptions, EnvSpec, EpisodeConfig, EpisodeRunner,
    GraphSpec, Instance, MeansSpec, StrategySpec,
};
use netbandit::strategies::{build_strategy_graph, enumerate_feasible, Constraint};
use rand::Rng as _;

use common::reference;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1. Index formulas vs. a 40-digit mpmath evaluation.
fn c01_index_oracles() -> Outcome {
    let text = include_str!("data/index_oracle.csv");
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut sentinels = 0;
    let mut boundary = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let mean: f64 = f[1].parse().unwrap();
        let count_: u64 = f[2].parse().unwrap();
        let t: u64 = f[3].parse().unwrap();
        let k: u64 = f[4].parse().unwrap();
        let got = match f[0] {
            "sso" => sso_index(mean, count_, t, k),
            "ssr" => ssr_index(mean, count_, t, k),
            "csr" => csr_arm_score(mean, count_, t, k),
            "moss" => moss_index(mean, count_, t, k),
            other => return Err(format!("unknown kind {other}")),
        };
        if f[5] == "inf" {
            sentinels += 1;
            ensure(got == f64::INFINITY, || {
                format!("{line}: expected +inf, got {got}")
            })?;
        } else {
            let want: f64 = f[5].parse().unwrap();
            if got == mean {
                boundary += 1;
            }
            let err = (got - want).abs();
            ensure(err <= 1e-12, || {
                format!("{line}: got {got:.17}, |err| = {err:e}")
            })?;
            worst = worst.max(err);
        }
        count += 1;
    }
    ensure(count == 1000, || format!("fixture has {count} rows"))?;
    Ok(format!(
        "{count} tuples ({sentinels} sentinel, {boundary} clamped), max |err| = {worst:.2e} ≤ 1e-12"
    ))
}

// 2. Four-arm path, independent sets of size ≤ 2.
fn c02_path_example() -> Outcome {
    let g = RelationGraph::path(4);
    let fs = enumerate_feasible(&g, &Constraint::IndependentSets { max_size: 2 })
        .map_err(|e| e.to_string())?;
    // 1-based listing translated to 0-based.
    let expect_s: [&[usize]; 7] = [&[0], &[1], &[2], &[3], &[0, 2], &[0, 3], &[1, 3]];
    let expect_y: [&[usize]; 7] = [
        &[0, 1],
        &[0, 1, 2],
        &[1, 2, 3],
        &[2, 3],
        &[0, 1, 2, 3],
        &[0, 1, 2, 3],
        &[0, 1, 2, 3],
    ];
    ensure(fs.len() == 7, || format!("|F| = {}", fs.len()))?;
    for x in 0..7 {
        ensure(fs.strategy(x) == expect_s[x], || {
            format!("s{} = {:?}", x + 1, fs.strategy(x))
        })?;
        ensure(fs.y_set(x) == expect_y[x], || {
            format!("Y{} = {:?}", x + 1, fs.y_set(x))
        })?;
    }
    let sg = build_strategy_graph(&fs);
    ensure(sg.has_edge(1, 4) && sg.has_edge(4, 1), || {
        "s2–s5 edge missing".into()
    })?;
    ensure(!sg.has_edge(0, 3) && !sg.has_edge(3, 0), || {
        "s1–s4 edge present".into()
    })?;
    Ok("7 strategies and Y-sets exact; s2–s5 linked, s1–s4 not".into())
}

// 3. Observation accounting over 50 random episodes.
fn c03_observation_accounting() -> Outcome {
    let mut rng = Rng::seed_from_u64(303);
    let mut checked_rounds = 0u64;
    for ep in 0..50 {
        let arms = rng.gen_range(2..=30);
        let graph = match ep % 4 {
            0 => GraphSpec::Er {
                p: rng.gen_range(0.05..0.8),
                seed: None,
            },
            1 => GraphSpec::Path,
            2 => GraphSpec::Complete,
            _ => GraphSpec::Empty,
        };
        let (scenario, policy) = match ep % 3 {
            0 => (Scenario::Sso, PolicyName::DflSso),
            1 => (Scenario::Ssr, PolicyName::DflSsr),
            _ => (Scenario::Csr, PolicyName::DflCsr),
        };
        let cfg = EpisodeConfig {
            scenario,
            policy,
            horizon: 2000,
            arms,
            graph,
            strategies: (scenario == Scenario::Csr)
                .then(|| StrategySpec::new(Constraint::AllSubsets { max_size: 2 })),
            env: EnvSpec::default(),
            seed: rng.gen(),
            options: PolicyOptions::default(),
        };
        let inst = Instance::build(&cfg).map_err(|e| e.to_string())?;
        let mut runner = EpisodeRunner::new(&inst, &cfg).map_err(|e| e.to_string())?;
        let mut visible_sum = 0u64;
        let checkpoints = netbandit::sim::log_checkpoints(2000, 50);
        while !runner.is_done() {
            let step = runner.step().map_err(|e| e.to_string())?;
            visible_sum += match scenario {
                Scenario::Csr => inst.strategies.as_ref().unwrap().y_set(step.action).len(),
                _ => inst.graph.closed(step.action).len(),
            } as u64;
            if checkpoints.binary_search(&step.round).is_ok() {
                checked_rounds += 1;
                let snap = runner.snapshot();
                let o = snap.arm_observations.as_ref().unwrap();
                let total: u64 = o.iter().sum();
                ensure(total == visible_sum, || {
                    format!(
                        "episode {ep} round {}: ΣO = {total}, Σ|visible| = {visible_sum}",
                        step.round
                    )
                })?;
                if let Some(ob) = &snap.side_observations {
                    for (i, &b) in ob.iter().enumerate() {
                        let m = inst.graph.closed(i).iter().map(|&j| o[j]).min().unwrap();
                        ensure(b == m, || {
                            format!(
                                "episode {ep} round {}: O^b_{i} = {} ≠ min = {m}",
                                step.round, b
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "50 episodes, {checked_rounds} checkpoints: ΣO exact, O^b = min over N_i"
    ))
}

fn sso_vs_moss() -> Result<netbandit::sim::BatchResult, String> {
    let exp = Preset::FigSsoVsMoss.experiment();
    run_batch(
        &exp.template,
        &exp.seeds(),
        &exp.policies,
        &BatchOptions::default(),
    )
    .map_err(|e| e.to_string())
}

// 4 & 5. DFL-SSO vs MOSS at K = 100, ER p = 0.3, n = 10⁴, 20 seeds.
fn c04_c05(result: &netbandit::sim::BatchResult) -> (Outcome, Outcome) {
    let n = result.horizon;
    let sso: Vec<_> = result.runs_for(PolicyName::DflSso).collect();
    let moss: Vec<_> = result.runs_for(PolicyName::Moss).collect();
    let mean_avg = |runs: &[&netbandit::sim::RunSummary]| {
        runs.iter().map(|r| r.final_pseudo / n as f64).sum::<f64>() / runs.len() as f64
    };
    let a = mean_avg(&sso);
    let m = mean_avg(&moss);
    let wins = sso
        .iter()
        .zip(&moss)
        .filter(|(s, mo)| s.seed == mo.seed && s.final_pseudo < mo.final_pseudo)
        .count();
    let c4 = if a < 0.05 && wins >= 18 {
        Ok(format!(
            "DFL-SSO mean avg regret {a:.5} < 0.05 (MOSS {m:.5}); DFL-SSO below MOSS in {wins}/20 seeds"
        ))
    } else {
        Err(format!(
            "DFL-SSO mean avg regret {a:.5}, MOSS {m:.5}, wins {wins}/20"
        ))
    };

    let mut worst_ratio: f64 = 0.0;
    let mut c5 = Ok(());
    let exp = Preset::FigSsoVsMoss.experiment();
    for run in &sso {
        let cfg = EpisodeConfig {
            seed: run.seed,
            ..exp.template.clone()
        };
        let inst = match Instance::build(&cfg) {
            Ok(i) => i,
            Err(e) => return (c4, Err(e.to_string())),
        };
        let cover = clique_count_for_bound(&inst.graph, &inst.optimum.gaps, n, ALPHA).unwrap();
        let bound = bound_sso(n, 100, cover);
        worst_ratio = worst_ratio.max(run.final_pseudo / bound);
        if run.final_pseudo > bound {
            c5 = Err(format!(
                "seed {}: regret {} > bound {bound}",
                run.seed, run.final_pseudo
            ));
        }
    }
    let c5 =
        c5.map(|_| format!("all 20 seeds within bound_sso; max regret/bound = {worst_ratio:.4}"));
    (c4, c5)
}

fn cso_batch(p: f64) -> Result<f64, String> {
    let exp = Preset::FigCsoSparse.experiment();
    let template = EpisodeConfig {
        graph: GraphSpec::Er { p, seed: None },
        ..exp.template.clone()
    };
    let res = run_batch(
        &template,
        &exp.seeds(),
        &[PolicyName::DflCso],
        &BatchOptions {
            bounds: false,
            ..BatchOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let agg = res.aggregate(PolicyName::DflCso).unwrap();
    Ok(*agg.mean_average.last().unwrap())
}

// 6. Sparse vs dense relation graph under DFL-CSO.
fn c06_cso_contrast() -> Outcome {
    let sparse = cso_batch(0.3)?;
    let dense = cso_batch(0.6)?;
    if dense < sparse {
        Ok(format!(
            "mean avg regret at n: p=0.6 → {dense:.5} < p=0.3 → {sparse:.5}"
        ))
    } else {
        Err(format!("p=0.6 → {dense:.5} not below p=0.3 → {sparse:.5}"))
    }
}

// 7. SSR optimum differs from the best single arm.
fn c07_ssr_shift() -> Outcome {
    let n = 20_000u64;
    let mut worst: f64 = 1.0;
    for seed in replicate_seeds(707, 20) {
        let cfg = EpisodeConfig {
            scenario: Scenario::Ssr,
            policy: PolicyName::DflSsr,
            horizon: n,
            arms: 3,
            graph: GraphSpec::Path,
            strategies: None,
            env: EnvSpec {
                dist: RewardDist::Bernoulli,
                means: MeansSpec::Fixed {
                    values: vec![0.9, 0.5, 0.4],
                },
            },
            seed,
            options: PolicyOptions::default(),
        };
        let ep = run_episode(&cfg).map_err(|e| e.to_string())?;
        let tail = &ep.trace.actions[(n - n / 10) as usize..];
        let frac = tail.iter().filter(|&&a| a == 1).count() as f64 / tail.len() as f64;
        worst = worst.min(frac);
        ensure(frac >= 0.9, || {
            format!("seed {seed}: arm 1 in {frac:.3} of final rounds")
        })?;
    }
    Ok(format!(
        "arm 1 (argmax u) in ≥ {worst:.4} of the final 10% in all 20 seeds"
    ))
}

// 8. DFL-CSR on the four-arm example.
fn c08_csr_convergence() -> Outcome {
    let n = 10_000u64;
    let means = vec![0.8, 0.2, 0.3, 0.7];
    let g = RelationGraph::path(4);
    let fs = enumerate_feasible(&g, &Constraint::IndependentSets { max_size: 2 }).unwrap();
    let opt = compute_optimum(&means, &g, Some(&fs), Scenario::Csr).unwrap();
    let mut sigma: Vec<f64> = opt.values.clone();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sigma.dedup();
    let separation = sigma[0] - sigma[1];
    ensure(separation >= 0.3, || format!("σ separation {separation}"))?;
    let bound = bound_csr(n, 4, fs.max_y() as u64).unwrap();
    let template = EpisodeConfig {
        scenario: Scenario::Csr,
        policy: PolicyName::DflCsr,
        horizon: n,
        arms: 4,
        graph: GraphSpec::Path,
        strategies: Some(StrategySpec::new(Constraint::IndependentSets {
            max_size: 2,
        })),
        env: EnvSpec {
            dist: RewardDist::Bernoulli,
            means: MeansSpec::Fixed { values: means },
        },
        seed: 0,
        options: PolicyOptions::default(),
    };
    let res = run_batch(
        &template,
        &replicate_seeds(808, 20),
        &[PolicyName::DflCsr],
        &BatchOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let avg = *res
        .aggregate(PolicyName::DflCsr)
        .unwrap()
        .mean_average
        .last()
        .unwrap();
    ensure(avg < 0.05, || format!("mean avg regret {avg:.5} ≥ 0.05"))?;
    for r in &res.runs {
        ensure(r.final_pseudo <= bound, || {
            format!(
                "seed {}: cumulative {} > bound {bound}",
                r.seed, r.final_pseudo
            )
        })?;
    }
    let worst = res.runs.iter().map(|r| r.final_pseudo).fold(0.0, f64::max);
    Ok(format!(
        "σ separation {separation:.2}; mean avg regret {avg:.5} < 0.05; max cumulative {worst:.2} ≤ bound {bound:.4e}"
    ))
}

// 9. Bound calculators.
fn c09_bounds() -> Outcome {
    let ssr = bound_ssr(100, 4);
    let sso = bound_sso(100, 4, 2);
    let csr = bound_csr(64, 4, 2).unwrap();
    // mpmath, 40 digits
    let csr_ref = 9672.095844815315;
    ensure(ssr == 3920.0, || format!("bound_ssr = {ssr}"))?;
    ensure((sso - 326.2).abs() <= 1e-9, || format!("bound_sso = {sso}"))?;
    let rel = (csr - csr_ref).abs() / csr_ref;
    ensure(rel <= 1e-6, || {
        format!("bound_csr = {csr}, rel err {rel:e}")
    })?;
    Ok(format!(
        "ssr = {ssr}, sso = {sso}, csr = {csr:.6} (rel err {rel:.1e})"
    ))
}

// 10. Preset CSVs are byte-identical across reruns and worker counts.
fn c10_determinism(first_sso: &netbandit::sim::BatchResult) -> Outcome {
    let mut lines = Vec::new();
    for preset in Preset::ALL {
        let exp = preset.experiment();
        let run = |threads| {
            run_batch(
                &exp.template,
                &exp.seeds(),
                &exp.policies,
                &BatchOptions {
                    threads,
                    ..BatchOptions::default()
                },
            )
            .map(|r| csv_string(&r))
            .map_err(|e| e.to_string())
        };
        let a = if preset == Preset::FigSsoVsMoss {
            csv_string(first_sso)
        } else {
            run(None)?
        };
        let b = run(Some(2))?;
        ensure(a == b, || format!("{preset}: CSV differs between runs"))?;
        lines.push(format!("{preset} ({} B)", a.len()));
    }
    Ok(format!("identical CSV bytes: {}", lines.join(", ")))
}

// 11. Engine action sequences equal an independent straight-line replay.
fn c11_brute_force() -> Outcome {
    let mut rng = Rng::seed_from_u64(1111);
    let mut runs = 0;
    for case in 0..400 {
        let arms = rng.gen_range(2..=4);
        let horizon = rng.gen_range(1..=50);
        let policy = [
            PolicyName::DflSso,
            PolicyName::DflSsr,
            PolicyName::DflCso,
            PolicyName::DflCsr,
            PolicyName::Moss,
        ][case % 5];
        let scenario = match policy {
            PolicyName::DflSso | PolicyName::Moss => Scenario::Sso,
            PolicyName::DflSsr => Scenario::Ssr,
            PolicyName::DflCso => Scenario::Cso,
            _ => Scenario::Csr,
        };
        let constraint = if rng.gen_bool(0.5) {
            Constraint::IndependentSets { max_size: 2 }
        } else {
            Constraint::AllSubsets { max_size: 2 }
        };
        let dist = [
            RewardDist::Bernoulli,
            RewardDist::UniformInterval,
            RewardDist::PointMass,
        ][rng.gen_range(0..3)];
        let cfg = EpisodeConfig {
            scenario,
            policy,
            horizon,
            arms,
            graph: GraphSpec::Er {
                p: 0.5,
                seed: Some(rng.gen()),
            },
            strategies: scenario
                .is_combinatorial()
                .then(|| StrategySpec::new(constraint)),
            env: EnvSpec {
                dist,
                means: MeansSpec::Uniform { seed: None },
            },
            seed: rng.gen(),
            options: PolicyOptions::default(),
        };
        let inst = Instance::build(&cfg).map_err(|e| e.to_string())?;
        if let Some(fs) = &inst.strategies {
            ensure(fs.len() <= 10, || format!("|F| = {}", fs.len()))?;
        }
        let engine = run_episode(&cfg).map_err(|e| e.to_string())?.trace.actions;
        let tie = cfg.tie_break_seed();
        let env: &BanditEnv = &inst.env;
        let g = &*inst.graph;
        let replay = match policy {
            PolicyName::DflSso => reference::dfl_sso(g, env, horizon, tie),
            PolicyName::DflSsr => reference::dfl_ssr(g, env, horizon, tie),
            PolicyName::DflCso => reference::dfl_cso(
                g,
                inst.strategies.as_ref().unwrap().strategies(),
                env,
                horizon,
                tie,
            ),
            PolicyName::DflCsr => reference::dfl_csr(
                g,
                inst.strategies.as_ref().unwrap().strategies(),
                env,
                horizon,
                tie,
            ),
            _ => reference::moss(arms, |a, x| x[a], 1.0, env, horizon, tie),
        };
        ensure(engine == replay, || {
            format!("case {case} ({policy}, K={arms}, n={horizon}): engine {engine:?} vs reference {replay:?}")
        })?;
        runs += 1;
    }
    Ok(format!(
        "{runs} small instances (K ≤ 4, |F| ≤ 10, n ≤ 50): identical action sequences"
    ))
}

fn report(id: &str, title: &str, started: Instant, outcome: &Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(msg) => {
            println!("[PASS] {id} {title} ({secs:.1}s): {msg}");
            true
        }
        Err(msg) => {
            println!("[FAIL] {id} {title} ({secs:.1}s): {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;

    let t = Instant::now();
    ok &= report("C1", "index-formula oracles", t, &c01_index_oracles());
    let t = Instant::now();
    ok &= report("C2", "four-arm golden example", t, &c02_path_example());
    let t = Instant::now();
    ok &= report(
        "C3",
        "observation accounting",
        t,
        &c03_observation_accounting(),
    );

    let t = Instant::now();
    let batch = sso_vs_moss();
    let (c4, c5, first) = match batch {
        Ok(res) => {
            let (a, b) = c04_c05(&res);
            (a, b, Some(res))
        }
        Err(e) => (Err(e.clone()), Err(e), None),
    };
    ok &= report("C4", "zero-regret trend vs MOSS", t, &c4);
    ok &= report("C5", "bound domination", t, &c5);

    let t = Instant::now();
    ok &= report("C6", "CSO sparse/dense contrast", t, &c06_cso_contrast());
    let t = Instant::now();
    ok &= report("C7", "SSR optimum shift", t, &c07_ssr_shift());
    let t = Instant::now();
    ok &= report("C8", "CSR convergence", t, &c08_csr_convergence());
    let t = Instant::now();
    ok &= report("C9", "bound calculators", t, &c09_bounds());
    let t = Instant::now();
    let c10 = match &first {
        Some(res) => c10_determinism(res),
        None => Err("C4 batch failed".into()),
    };
    ok &= report("C10", "preset determinism", t, &c10);
    let t = Instant::now();
    ok &= report("C11", "small-instance brute force", t, &c11_brute_force());

    if ok {
        println!("acceptance: all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
