//! Game-theoretic link prediction.
//!
//! Two nodes that are redundant to each other inside a group-closeness game —
//! negative Shapley or semivalue interaction — tend to share neighborhoods,
//! which makes the negated interaction index a similarity score for link
//! prediction. This crate provides:
//!
//! * fast all-pairs interaction-index kernels over bounded neighborhoods
//!   ([`interaction`]),
//! * exponential-time enumeration oracles that certify them ([`oracle`]),
//! * baseline similarity measures ([`baselines`]),
//! * the edge-removal / AUC / precision experiment protocol ([`eval`]),
//! * graph plumbing: I/O, preferential-attachment generation, bounded
//!   shortest paths ([`graph`], [`sssp`], [`neighborhood`]).

pub mod baselines;
pub mod benchmarks;
pub mod datasets;
pub mod distance;
pub mod error;
pub mod eval;
pub mod graph;
pub mod interaction;
pub mod neighborhood;
pub mod oracle;
pub mod scores;
pub mod sssp;
pub mod verify;

pub use baselines::{
    common_neighbors_scores, lrw_scores, shapley_k_degree_scores, srw_scores, NeighborhoodMode,
    WalkProfile,
};
pub use distance::{eval_f, DistanceFunction, DistanceKind};
pub use error::{Error, Result};
pub use eval::{
    auc, expected_precision, run_experiment, run_trial, ExperimentConfig, ExperimentReport,
    MethodKind, MethodSpec, Ranking, WeightFamily,
};
pub use graph::{generate_pa, Graph, LoadOptions, LoadReport, NodeId, RandomSeed};
pub use interaction::{
    banzhaf_weights, semivalue_closeness_all_pairs, shapley_closeness_all_pairs, shapley_weights,
    SemivalueWeights,
};
pub use neighborhood::{build_neighborhood_table, NeighborhoodTable};
pub use scores::PairScores;
pub use sssp::{bounded_sssp, BoundedDistanceList};
