//! Embedding `D_k` into tournaments with many triangle-rich edges.

pub mod bipartite;
pub mod config;
pub mod drc;
pub mod driver;
pub mod kst;
pub mod partition;
pub mod pipeline;
pub mod transitive;

pub use bipartite::BipartiteGraph;
pub use config::{AdaptiveParams, Mode, PipelineConfig};
pub use drc::{dependent_random_choice, dependent_random_choice_unchecked, DrcOutcome, DrcParams};
pub use driver::{find_dk, Attempt, FindDkReport, Level, Route};
pub use kst::{greedy_matching, kst_extract, KstWitness};
pub use partition::{
    good_edges, random_tripartition, triangle_seeded_tripartition, Parts, ScoredEdge, Tripartition,
};
pub use pipeline::{
    find_dk_imbalanced, find_dk_imbalanced_with_order, verify_trace, EmbeddingTrace,
    ImbalancedOutcome, RetryCounts, RoundFailure, TraceViolation,
};
pub use transitive::{erdos_moser, erdos_moser_bound, is_transitive_in_order};
