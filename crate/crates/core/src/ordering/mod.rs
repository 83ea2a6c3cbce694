//! Vertex orderings: exact and locally optimal orderings, backward-edge
//! analysis, the local-optimality degree check and the long-edge/dense-window
//! dichotomy.

mod analysis;
mod dichotomy;
mod exact;
mod local;

pub use analysis::{
    analyze_ordering, check_prop21, long_threshold, BackwardEdge, OrderingAnalysis, Prop21Bullet,
    Prop21Report, Prop21Violation,
};
pub use dichotomy::{count_backward_in_window, long_or_boost, Dichotomy, DichotomyResult};
pub use exact::{count_backward, exact_min_backward, ExactOrdering, EXACT_MAX_N};
pub use local::{is_relocation_stable, local_search_ordering, relocate_to_fixpoint};
