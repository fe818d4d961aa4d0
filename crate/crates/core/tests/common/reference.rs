//! Straight-line reference loops for the index policies, used to cross-check
//! the engine's action sequences. Only the reward stream, the relation graph
//! and the tie-break generator are shared with the engine; statistics,
//! indices, visibility and tie handling are recomputed here from scratch.

use netbandit::env::BanditEnv;
use netbandit::graph::RelationGraph;
use netbandit::rng::{Rng, SeedableRng};
use rand::Rng as _;

fn pick(ties: &[usize], rng: &mut Rng) -> usize {
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.gen_range(0..ties.len())]
    }
}

fn best_of(values: &[f64]) -> Vec<usize> {
    let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (0..values.len()).filter(|&i| values[i] == top).collect()
}

fn bonus(t: f64, c: f64, o: u64) -> f64 {
    if o == 0 {
        return f64::INFINITY;
    }
    let o = o as f64;
    ((t / (c * o)).ln().max(0.0) / o).sqrt()
}

fn closed(g: &RelationGraph, i: usize) -> Vec<usize> {
    (0..g.num_arms())
        .filter(|&j| j == i || g.adjacent(i, j))
        .collect()
}

pub fn dfl_sso(g: &RelationGraph, env: &BanditEnv, n: u64, tie_seed: u64) -> Vec<usize> {
    let k = g.num_arms();
    let mut rng = Rng::seed_from_u64(tie_seed);
    let mut o = vec![0u64; k];
    let mut xbar = vec![0.0f64; k];
    let mut sum = vec![0.0f64; k];
    let mut out = Vec::new();
    for t in 1..=n {
        let idx: Vec<f64> = (0..k)
            .map(|i| xbar[i] + bonus(t as f64, k as f64, o[i]))
            .collect();
        let a = pick(&best_of(&idx), &mut rng);
        let x = env.sample_round(t);
        for j in closed(g, a) {
            o[j] += 1;
            sum[j] += x[j];
            xbar[j] = sum[j] / o[j] as f64;
        }
        out.push(a);
    }
    out
}

pub fn dfl_ssr(g: &RelationGraph, env: &BanditEnv, n: u64, tie_seed: u64) -> Vec<usize> {
    let k = g.num_arms();
    let mut rng = Rng::seed_from_u64(tie_seed);
    let mut o = vec![0u64; k];
    let mut xbar = vec![0.0f64; k];
    let mut sum = vec![0.0f64; k];
    let mut out = Vec::new();
    for t in 1..=n {
        let idx: Vec<f64> = (0..k)
            .map(|i| {
                let nb = closed(g, i);
                let ob = nb.iter().map(|&j| o[j]).min().unwrap();
                let b: f64 = nb.iter().map(|&j| xbar[j]).sum::<f64>() / k as f64;
                b + bonus(t as f64, k as f64, ob)
            })
            .collect();
        let a = pick(&best_of(&idx), &mut rng);
        let x = env.sample_round(t);
        for j in closed(g, a) {
            o[j] += 1;
            sum[j] += x[j];
            xbar[j] = sum[j] / o[j] as f64;
        }
        out.push(a);
    }
    out
}

fn y_set(g: &RelationGraph, s: &[usize]) -> Vec<usize> {
    (0..g.num_arms())
        .filter(|&j| s.iter().any(|&i| i == j || g.adjacent(i, j)))
        .collect()
}

pub fn dfl_cso(
    g: &RelationGraph,
    strategies: &[Vec<usize>],
    env: &BanditEnv,
    n: u64,
    tie_seed: u64,
) -> Vec<usize> {
    let f = strategies.len();
    let m = strategies.iter().map(Vec::len).max().unwrap() as f64;
    let ys: Vec<Vec<usize>> = strategies.iter().map(|s| y_set(g, s)).collect();
    let inside = |a: &[usize], b: &[usize]| a.iter().all(|i| b.contains(i));
    let mut rng = Rng::seed_from_u64(tie_seed);
    let mut o = vec![0u64; f];
    let mut rbar = vec![0.0f64; f];
    let mut sum = vec![0.0f64; f];
    let mut out = Vec::new();
    for t in 1..=n {
        let idx: Vec<f64> = (0..f)
            .map(|x| rbar[x] + bonus(t as f64, f as f64, o[x]))
            .collect();
        let a = pick(&best_of(&idx), &mut rng);
        let x = env.sample_round(t);
        for y in 0..f {
            let linked =
                y == a || (inside(&strategies[y], &ys[a]) && inside(&strategies[a], &ys[y]));
            if linked {
                let r: f64 = strategies[y].iter().map(|&i| x[i]).sum::<f64>() / m;
                o[y] += 1;
                sum[y] += r;
                rbar[y] = sum[y] / o[y] as f64;
            }
        }
        out.push(a);
    }
    out
}

pub fn dfl_csr(
    g: &RelationGraph,
    strategies: &[Vec<usize>],
    env: &BanditEnv,
    n: u64,
    tie_seed: u64,
) -> Vec<usize> {
    let k = g.num_arms();
    let ys: Vec<Vec<usize>> = strategies.iter().map(|s| y_set(g, s)).collect();
    let mut rng = Rng::seed_from_u64(tie_seed);
    let mut o = vec![0u64; k];
    let mut xbar = vec![0.0f64; k];
    let mut sum = vec![0.0f64; k];
    let mut out = Vec::new();
    for t in 1..=n {
        let w: Vec<f64> = (0..k)
            .map(|i| {
                if o[i] == 0 {
                    f64::INFINITY
                } else {
                    let oi = o[i] as f64;
                    let r = (t as f64).powf(2.0 / 3.0) / (k as f64 * oi);
                    xbar[i] + (r.ln().max(0.0) / oi).sqrt()
                }
            })
            .collect();
        // Strategies covering more unexplored arms win; then the finite sum.
        let scored: Vec<(usize, f64)> = ys
            .iter()
            .map(|y| {
                let inf = y.iter().filter(|&&i| w[i].is_infinite()).count();
                let fin: f64 = y.iter().filter(|&&i| w[i].is_finite()).map(|&i| w[i]).sum();
                (inf, fin)
            })
            .collect();
        let top_inf = scored.iter().map(|s| s.0).max().unwrap();
        let top_fin = scored
            .iter()
            .filter(|s| s.0 == top_inf)
            .map(|s| s.1)
            .fold(f64::NEG_INFINITY, f64::max);
        let ties: Vec<usize> = (0..scored.len())
            .filter(|&x| scored[x].0 == top_inf && scored[x].1 == top_fin)
            .collect();
        let a = pick(&ties, &mut rng);
        let x = env.sample_round(t);
        for &j in &ys[a] {
            o[j] += 1;
            sum[j] += x[j];
            xbar[j] = sum[j] / o[j] as f64;
        }
        out.push(a);
    }
    out
}

pub fn moss(
    num_actions: usize,
    reward: impl Fn(usize, &[f64]) -> f64,
    scale: f64,
    env: &BanditEnv,
    n: u64,
    tie_seed: u64,
) -> Vec<usize> {
    let mut rng = Rng::seed_from_u64(tie_seed);
    let mut pulls = vec![0u64; num_actions];
    let mut mean = vec![0.0f64; num_actions];
    let mut total = vec![0.0f64; num_actions];
    let mut out = Vec::new();
    for t in 1..=n {
        let idx: Vec<f64> = (0..num_actions)
            .map(|a| mean[a] + bonus(n as f64, num_actions as f64, pulls[a]))
            .collect();
        let a = pick(&best_of(&idx), &mut rng);
        let x = env.sample_round(t);
        pulls[a] += 1;
        total[a] += reward(a, &x) / scale;
        mean[a] = total[a] / pulls[a] as f64;
        out.push(a);
    }
    out
}
