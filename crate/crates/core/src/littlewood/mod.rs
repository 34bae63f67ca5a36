//! Canonical form of nonderogatory quaternion matrices under unitary
//! similarity, with its graph and block decomposition.

mod graph;
mod reduce;
mod tracker;
mod triangular;

pub use graph::{components, decompose, graph, is_forest, Decomposition};
pub use reduce::{
    canonical_form, canonical_form_with_order, induced_order, is_fixed, same_canonical,
    standard_order, unitarily_similar, CanonicalResult, LogEntry, ReductionState,
};
pub use tracker::{initial_tracker, Field, RelationTracker};
pub use triangular::{canon_threshold, is_nonderogatory, triangularize, TriangularForm};
