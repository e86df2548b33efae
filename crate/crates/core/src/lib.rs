//! Exact solver and reduction workbench for the matching-constrained
//! edge-weighted partial vertex cover problem on bipartite graphs (M-EPVCB).
//!
//! An instance is a bipartite graph with non-negative integer edge weights
//! and thresholds `(k1, k2, k3)`; the question is whether some set of at
//! most `k1` vertices covers edges of total weight at least `k2` that
//! contain a matching of weight at least `k3`.
//!
//! The crate provides:
//!
//! - [`graph`], [`instance`], [`mod@format`]: the instance model,
//!   certificates, and the canonical on-disk text format;
//! - [`matching`]: bipartite kernels (maximum and maximum-weight matchings,
//!   minimum vertex covers, proper edge colorings, induced matchings);
//! - [`preprocess`]: rewrite rules that solve or simplify instances, ending
//!   in the normalized regime `k1 < k3 < k2 < k3 * max_degree`;
//! - [`solvers`]: brute-force oracles, an exact coverage-only subroutine,
//!   structured exact algorithms and the dispatch pipeline;
//! - [`reductions`]: constructive instance transformations with
//!   machine-checked equivalence against the oracles;
//! - [`generate`]: seeded instance generators.
//!
//! Core types are generic over the integer scalar via [`num::Weight`]; the
//! aliases below fix the default `i64` instantiation used by the CLI.

pub mod format;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod num;
pub mod preprocess;
pub mod reductions;
pub mod solvers;
pub mod stats;

pub use graph::{BipartiteGraph, Edge, EdgeId, Vertex};
pub use instance::{
    check_certificate, Answer, AnyInstance, BkpInstance, CardinalityMode, Certificate,
    MepvcbInstance, SubsetSumInstance, Verdict,
};
pub use num::Weight;
pub use solvers::{solve, SolveConfig, Strategy};
pub use stats::{graph_stats, GraphStats, DEFAULT_INDUCED_MATCHING_CAP};

/// Default scalar for weights, profits and thresholds.
pub type DefaultWeight = i64;
/// Bipartite graph over the default scalar.
pub type Graph = BipartiteGraph<DefaultWeight>;
/// Decision instance over the default scalar.
pub type Instance = MepvcbInstance<DefaultWeight>;
/// Bi-objective knapsack instance over the default scalar.
pub type Bkp = BkpInstance<DefaultWeight>;
/// Sized subset-sum instance over the default scalar.
pub type SubsetSum = SubsetSumInstance<DefaultWeight>;
