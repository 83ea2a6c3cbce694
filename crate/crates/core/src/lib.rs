//! Tournaments far from transitive and the search for the tournament `D_k`.
//!
//! `D_k` has three transitive classes of size `k` with all class edges
//! oriented `U1 -> U2 -> U3 -> U1`. The crate provides the tournament type
//! and generators, exact and heuristic orderings with their backward-edge
//! analysis, triangle counting, and a randomized embedding search whose
//! every answer is checked.

pub mod bits;
pub mod density;
pub mod dk;
pub mod embed;
pub mod error;
pub mod generate;
pub mod ordering;
pub mod rng;
pub mod tournament;
pub mod triads;

pub use bits::BitSet;
pub use density::{parse_density, Density};
pub use dk::{
    brute_force_contains_dk, check_dk_embedding, find_dk_violation, DkEmbedding, DkViolation,
};
pub use embed::{
    find_dk, find_dk_imbalanced, verify_trace, EmbeddingTrace, FindDkReport, Mode, PipelineConfig,
};
pub use error::{Error, FormatErrorKind, Result, Stage};
pub use generate::{Family, GeneratorSpec};
pub use ordering::{
    analyze_ordering, exact_min_backward, local_search_ordering, long_or_boost, OrderingAnalysis,
};
pub use tournament::{parse_tournament, serialize_tournament, Tournament};
pub use triads::{count_directed_triangles, extract_triangle_rich, TriangleRichSet};
