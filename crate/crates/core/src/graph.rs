//! Relation graphs over arms.
//!
//! Arms are 0-based. The graph is undirected and simple; `closed(i)` returns
//! `{i} ∪ N(i)` in ascending order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{Rng, SeedableRng};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationGraph {
    num_arms: usize,
    adjacency: Vec<Vec<usize>>,
    closed: Vec<Vec<usize>>,
}

impl RelationGraph {
    /// Build a graph from an edge list. Duplicate and reversed pairs are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn new(num_arms: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(i, j) in edges {
            if i >= num_arms || j >= num_arms {
                return Err(Error::input(format!(
                    "edge ({i},{j}) has an endpoint outside 0..{num_arms}"
                )));
            }
            if i == j {
                return Err(Error::input(format!("self-loop on vertex {i}")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self::from_canonical(num_arms, set))
    }

    fn from_canonical(num_arms: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); num_arms];
        for (i, j) in edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let closed = adjacency
            .iter()
            .enumerate()
            .map(|(i, nbrs)| {
                let mut c = nbrs.clone();
                let pos = c.binary_search(&i).unwrap_err();
                c.insert(pos, i);
                c
            })
            .collect();
        RelationGraph {
            num_arms,
            adjacency,
            closed,
        }
    }

    pub fn empty(num_arms: usize) -> Self {
        Self::from_canonical(num_arms, BTreeSet::new())
    }

    pub fn complete(num_arms: usize) -> Self {
        let edges = (0..num_arms)
            .flat_map(|i| (i + 1..num_arms).map(move |j| (i, j)))
            .collect();
        Self::from_canonical(num_arms, edges)
    }

    pub fn path(num_arms: usize) -> Self {
        let edges = (1..num_arms).map(|i| (i - 1, i)).collect();
        Self::from_canonical(num_arms, edges)
    }

    /// Erdős–Rényi G(K, p): each unordered pair, visited in lexicographic
    /// order, is kept when a uniform draw from the seeded stream falls below `p`.
    pub fn erdos_renyi(num_arms: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("edge probability {p} outside [0,1]")));
        }
        let mut rng = Rng::seed_from_u64(seed);
        let mut edges = BTreeSet::new();
        for i in 0..num_arms {
            for j in i + 1..num_arms {
                if rng.gen::<f64>() < p {
                    edges.insert((i, j));
                }
            }
        }
        Ok(Self::from_canonical(num_arms, edges))
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Open neighborhood N(i).
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Closed neighborhood N_i = {i} ∪ N(i).
    pub fn closed(&self, i: usize) -> &[usize] {
        &self.closed[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    /// Subgraph induced by `vertices`. Returned map sends the new index to
    /// the old one; new indices follow ascending old-index order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(RelationGraph, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.num_arms) {
            return Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                self.num_arms
            )));
        }
        let mut new_index = vec![usize::MAX; self.num_arms];
        for (new, &old) in keep.iter().enumerate() {
            new_index[old] = new;
        }
        let mut edges = BTreeSet::new();
        for (new_i, &old_i) in keep.iter().enumerate() {
            for &old_j in &self.adjacency[old_i] {
                let new_j = new_index[old_j];
                if new_j != usize::MAX && new_j > new_i {
                    edges.insert((new_i, new_j));
                }
            }
        }
        Ok((Self::from_canonical(keep.len(), edges), keep))
    }

    /// Parse the edge-list format: first non-comment line is `K`, each
    /// following line one whitespace-separated `i j` pair; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut num_arms = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("{tok:?}: {e}"),
                })
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (num_arms, toks.as_slice()) {
                (None, [k]) => num_arms = Some(parse(k)?),
                (Some(_), [a, b]) => edges.push((parse(a)?, parse(b)?)),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("unexpected line {line:?}"),
                    })
                }
            }
        }
        let num_arms = num_arms.ok_or(Error::Parse {
            line: 0,
            message: "missing arm count".into(),
        })?;
        Self::new(num_arms, &edges)
    }

    /// Canonical edge-list text: `K`, then sorted `i j` pairs with `i < j`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.num_arms);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }
}

/// A partition of a vertex subset into cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn size(&self) -> usize {
        self.cliques.len()
    }

    /// Check that every set is a clique of `g` and that the sets are disjoint.
    pub fn is_valid_for(&self, g: &RelationGraph) -> bool {
        let mut seen = vec![false; g.num_arms()];
        for c in &self.cliques {
            for (a, &u) in c.iter().enumerate() {
                if u >= g.num_arms() || seen[u] {
                    return false;
                }
                seen[u] = true;
                if c[a + 1..].iter().any(|&v| !g.adjacent(u, v)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Greedy clique cover of all vertices: take the lowest-indexed uncovered
/// vertex and grow a maximal clique over uncovered vertices in index order.
pub fn greedy_clique_cover(g: &RelationGraph) -> CliqueCover {
    let mut covered = vec![false; g.num_arms()];
    let mut cliques = Vec::new();
    for seed in 0..g.num_arms() {
        if covered[seed] {
            continue;
        }
        covered[seed] = true;
        let mut clique = vec![seed];
        for &v in g.neighbors(seed) {
            if !covered[v] && clique.iter().all(|&u| g.adjacent(u, v)) {
                covered[v] = true;
                clique.push(v);
            }
        }
        cliques.push(clique);
    }
    CliqueCover { cliques }
}
