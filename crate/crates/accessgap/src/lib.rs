//! Maximin information access in social networks.
//!
//! Information spread is modeled by the independent cascade: seed nodes
//! start informed, and each newly informed node gets one chance to inform
//! each neighbor with a fixed transmission probability. This crate provides
//!
//! - cascade simulation with Monte Carlo probability estimation and an exact
//!   live-edge oracle for small graphs ([`cascade`]);
//! - the generalized-mean welfare family over access probabilities, access
//!   gaps across bipartitions, and brute-force checkers for the
//!   rich-get-richer and k-imbalance patterns ([`welfare`]);
//! - seed-selection heuristics: greedy maximin, myopic, naive myopic,
//!   farthest-point, random, and lazy greedy reach maximization
//!   ([`seeding`]);
//! - deterministic generators for the small benchmark graphs used in the
//!   regression suite ([`fixtures`]);
//! - an experiment harness producing machine-readable sweep, correlation,
//!   histogram, and timing reports ([`experiments`]).
//!
//! The `accessgap` binary exposes all of it behind `gen`, `estimate`,
//! `exact`, `select`, and `experiment` subcommands; see the crate examples
//! for library usage.

pub mod cascade;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod graph;
pub mod seeding;
pub mod welfare;

pub use cascade::{
    exact_probabilities, hlevel_recurrence, prob_est, simulate_once, CascadeConfig, ProbVector,
    SeedSet,
};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use seeding::{Evaluator, Method, SelectionResult};
pub use welfare::{access_gap, welfare, Bipartition, WelfareSpec};
