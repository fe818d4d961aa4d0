//! Feasible strategy sets, neighbor unions, the strategy relation graph and
//! the combinatorial argmax oracle.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::rng::{pick_uniform, Rng};

/// Default ceiling on |F|.
pub const DEFAULT_STRATEGY_CAP: usize = 1_000_000;

/// Which subsets of arms are feasible strategies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Constraint {
    /// Every nonempty subset with at most `max_size` arms.
    AllSubsets { max_size: usize },
    /// Every subset with exactly `size` arms.
    ExactSize { size: usize },
    /// Every nonempty independent set of the relation graph with at most `max_size` arms.
    IndependentSets { max_size: usize },
    /// A caller-supplied list.
    Explicit { strategies: Vec<Vec<usize>> },
}

impl Constraint {
    /// Parse `all:<M>`, `exact:<M>`, `independent:<M>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::input(format!("strategy spec {spec:?} needs <kind>:<M>")))?;
        let m: usize = arg
            .parse()
            .map_err(|_| Error::input(format!("bad cardinality in {spec:?}")))?;
        match kind {
            "all" => Ok(Constraint::AllSubsets { max_size: m }),
            "exact" => Ok(Constraint::ExactSize { size: m }),
            "independent" | "indep" => Ok(Constraint::IndependentSets { max_size: m }),
            _ => Err(Error::input(format!(
                "unknown strategy constraint {kind:?}"
            ))),
        }
    }
}

/// Feasible strategies with their neighbor unions Y_x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategySet {
    num_arms: usize,
    max_size: usize,
    strategies: Vec<Vec<usize>>,
    y_sets: Vec<Vec<usize>>,
    max_y: usize,
}

impl StrategySet {
    /// Build from explicit arm subsets (elements are sorted; duplicates rejected).
    pub fn from_strategies(graph: &RelationGraph, strategies: Vec<Vec<usize>>) -> Result<Self> {
        let k = graph.num_arms();
        let mut cleaned = Vec::with_capacity(strategies.len());
        for (x, mut s) in strategies.into_iter().enumerate() {
            if s.is_empty() {
                return Err(Error::input(format!("strategy {x} is empty")));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("strategy {x} repeats an arm")));
            }
            if let Some(&i) = s.last().filter(|&&i| i >= k) {
                return Err(Error::input(format!(
                    "strategy {x} uses arm {i} outside 0..{k}"
                )));
            }
            cleaned.push(s);
        }
        if cleaned.is_empty() {
            return Err(Error::input("strategy set is empty"));
        }
        let y_sets: Vec<Vec<usize>> = cleaned
            .iter()
            .map(|s| {
                let mut y: Vec<usize> = s.iter().flat_map(|&i| graph.closed(i)).copied().collect();
                y.sort_unstable();
                y.dedup();
                y
            })
            .collect();
        let max_size = cleaned.iter().map(Vec::len).max().unwrap_or(0);
        let max_y = y_sets.iter().map(Vec::len).max().unwrap_or(0);
        Ok(StrategySet {
            num_arms: k,
            max_size,
            strategies: cleaned,
            y_sets,
            max_y,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    /// M: the largest strategy cardinality.
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// N = max_x |Y_x|.
    pub fn max_y(&self) -> usize {
        self.max_y
    }

    pub fn strategies(&self) -> &[Vec<usize>] {
        &self.strategies
    }

    pub fn strategy(&self, x: usize) -> &[usize] {
        &self.strategies[x]
    }

    pub fn y_sets(&self) -> &[Vec<usize>] {
        &self.y_sets
    }

    pub fn y_set(&self, x: usize) -> &[usize] {
        &self.y_sets[x]
    }

    /// Explicit strategy file: one strategy per line, space-separated 0-based arms.
    pub fn parse_list(text: &str) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let s = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|e| Error::Parse {
                        line: lineno + 1,
                        message: format!("{tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(s);
        }
        Ok(out)
    }

    pub fn to_list(&self) -> String {
        let mut out = String::new();
        for s in &self.strategies {
            let line: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn enumerate_feasible(graph: &RelationGraph, constraint: &Constraint) -> Result<StrategySet> {
    enumerate_feasible_capped(graph, constraint, DEFAULT_STRATEGY_CAP)
}

/// Enumerate all strategies allowed by `constraint`, ordered by cardinality
/// and then lexicographically. Fails once more than `cap` are found.
pub fn enumerate_feasible_capped(
    graph: &RelationGraph,
    constraint: &Constraint,
    cap: usize,
) -> Result<StrategySet> {
    let k = graph.num_arms();
    let (sizes, independent) = match constraint {
        Constraint::Explicit { strategies } => {
            if strategies.len() > cap {
                return Err(Error::Capacity { cap });
            }
            return StrategySet::from_strategies(graph, strategies.clone());
        }
        Constraint::AllSubsets { max_size } => (1..=*max_size, false),
        Constraint::ExactSize { size } => (*size..=*size, false),
        Constraint::IndependentSets { max_size } => (1..=*max_size, true),
    };
    if sizes.is_empty() || *sizes.start() == 0 {
        return Err(Error::input("strategy cardinality must be at least 1"));
    }
    let mut found = Vec::new();
    let mut current = Vec::new();
    for size in sizes {
        if size > k {
            break;
        }
        extend(graph, independent, size, 0, &mut current, &mut found, cap)?;
    }
    if found.is_empty() {
        return Err(Error::input("constraint admits no strategy"));
    }
    StrategySet::from_strategies(graph, found)
}

fn extend(
    graph: &RelationGraph,
    independent: bool,
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if current.len() == size {
        if found.len() == cap {
            return Err(Error::Capacity { cap });
        }
        found.push(current.clone());
        return Ok(());
    }
    let remaining = size - current.len();
    for v in start..=graph.num_arms().saturating_sub(remaining) {
        if independent && current.iter().any(|&u| graph.adjacent(u, v)) {
            continue;
        }
        current.push(v);
        extend(graph, independent, size, v + 1, current, found, cap)?;
        current.pop();
    }
    Ok(())
}

/// How strategy-graph edges are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeRule {
    /// x ~ y iff s_y ⊆ Y_x and s_x ⊆ Y_y.
    #[default]
    Mutual,
    /// Playing x reveals every y with s_y ⊆ Y_x (directed).
    OneWay,
}

/// Strategy relation graph over the indices of a [`StrategySet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyGraph {
    rule: EdgeRule,
    /// For each x: every y (including x) whose reward is reconstructible
    /// when x is played, ascending.
    revealed: Vec<Vec<usize>>,
}

fn is_subset(small: &[usize], sorted_big: &[usize]) -> bool {
    small.iter().all(|i| sorted_big.binary_search(i).is_ok())
}

impl StrategyGraph {
    pub fn build(fs: &StrategySet, rule: EdgeRule) -> Self {
        let n = fs.len();
        let mut revealed = vec![Vec::new(); n];
        for (x, row) in revealed.iter_mut().enumerate() {
            for y in 0..n {
                let hit = x == y
                    || match rule {
                        EdgeRule::Mutual => {
                            is_subset(fs.strategy(y), fs.y_set(x))
                                && is_subset(fs.strategy(x), fs.y_set(y))
                        }
                        EdgeRule::OneWay => is_subset(fs.strategy(y), fs.y_set(x)),
                    };
                if hit {
                    row.push(y);
                }
            }
        }
        StrategyGraph { rule, revealed }
    }

    pub fn rule(&self) -> EdgeRule {
        self.rule
    }

    pub fn len(&self) -> usize {
        self.revealed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.revealed.is_empty()
    }

    /// Closed neighborhood of strategy x.
    pub fn closed(&self, x: usize) -> &[usize] {
        &self.revealed[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x != y && self.revealed[x].binary_search(&y).is_ok()
    }

    /// Undirected view keeping only edges present in both directions.
    pub fn to_relation_graph(&self) -> RelationGraph {
        let edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| {
                self.revealed[x]
                    .iter()
                    .filter(move |&&y| y > x && self.has_edge(y, x))
                    .map(move |&y| (x, y))
            })
            .collect();
        RelationGraph::new(self.len(), &edges).expect("strategy indices are in range")
    }
}

pub fn build_strategy_graph(fs: &StrategySet) -> StrategyGraph {
    StrategyGraph::build(fs, EdgeRule::Mutual)
}

/// How per-arm scores are aggregated into a strategy score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreMode {
    SumOverComponents,
    SumOverY,
}

/// Sum of per-arm scores where `+∞` entries are counted separately, so
/// strategies touching more unexplored arms rank strictly higher.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyScore {
    pub unbounded: usize,
    pub finite: f64,
}

impl StrategyScore {
    pub fn of(arms: &[usize], scores: &[f64]) -> Self {
        let mut s = StrategyScore {
            unbounded: 0,
            finite: 0.0,
        };
        for &i in arms {
            let v = scores[i];
            if v == f64::INFINITY {
                s.unbounded += 1;
            } else {
                s.finite += v;
            }
        }
        s
    }
}

impl PartialOrd for StrategyScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.unbounded.cmp(&other.unbounded) {
            Ordering::Equal => self.finite.partial_cmp(&other.finite),
            o => Some(o),
        }
    }
}

/// Per-round exact maximizer over a strategy set.
pub trait StrategyOracle {
    /// All maximizers, ascending.
    fn maximizers(&self, fs: &StrategySet, scores: &[f64], mode: ScoreMode) -> Result<Vec<usize>>;
}

/// Full scan over F.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveOracle;

impl StrategyOracle for ExhaustiveOracle {
    fn maximizers(&self, fs: &StrategySet, scores: &[f64], mode: ScoreMode) -> Result<Vec<usize>> {
        if fs.is_empty() {
            return Err(Error::input("empty strategy set"));
        }
        if scores.len() != fs.num_arms() {
            return Err(Error::input(format!(
                "{} scores for {} arms",
                scores.len(),
                fs.num_arms()
            )));
        }
        let mut best: Option<StrategyScore> = None;
        let mut ties = Vec::new();
        for x in 0..fs.len() {
            let arms = match mode {
                ScoreMode::SumOverComponents => fs.strategy(x),
                ScoreMode::SumOverY => fs.y_set(x),
            };
            let s = StrategyScore::of(arms, scores);
            match best {
                None => {
                    best = Some(s);
                    ties.push(x);
                }
                Some(b) => match s.partial_cmp(&b) {
                    Some(Ordering::Greater) => {
                        best = Some(s);
                        ties.clear();
                        ties.push(x);
                    }
                    Some(Ordering::Equal) => ties.push(x),
                    _ => {}
                },
            }
        }
        Ok(ties)
    }
}

/// Index of a maximizing strategy; ties broken uniformly with `rng`.
pub fn argmax_strategy(
    fs: &StrategySet,
    scores: &[f64],
    mode: ScoreMode,
    rng: &mut Rng,
) -> Result<usize> {
    let ties = ExhaustiveOracle.maximizers(fs, scores, mode)?;
    Ok(pick_uniform(&ties, rng))
}
