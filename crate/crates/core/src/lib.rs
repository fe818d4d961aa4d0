//! Stochastic multi-armed bandits on relation graphs.
//!
//! Four networked settings are supported: single or combinatorial play,
//! each with side observations (neighbors' rewards are seen) or side
//! rewards (neighbors' rewards are collected). The crate provides the
//! distribution-free index policies for each setting, MOSS/UCB1/random
//! baselines, regret accounting with the matching closed-form bounds, and
//! a seeded Monte-Carlo harness.
//!
//! ```
//! use netbandit::graph::RelationGraph;
//! use netbandit::regret::bound_ssr;
//!
//! let g = RelationGraph::path(4);
//! assert_eq!(g.closed(1), &[0, 1, 2]);
//! assert_eq!(bound_ssr(100, 4), 3920.0);
//! ```

pub mod env;
pub mod error;
pub mod graph;
pub mod policies;
pub mod presets;
pub mod regret;
pub mod report;
pub mod rng;
pub mod sim;
pub mod strategies;

pub use error::{Error, Result};
