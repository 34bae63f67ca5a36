//! Seeded random instances, wildness gadgets and a trace-word oracle.

mod gadgets;
mod generators;
mod oracle;

pub use gadgets::{gadget_m5, gadget_ma, gadget_wild, WildFixture, WildKind};
pub use generators::{
    conditioned_similarity, forest_witness, haar_unitary, jordan_real, normal_quaternion,
    planted_diagonal, planted_triangular, random_forest, random_matrix, random_nilpotent,
    random_nonderogatory, random_projector, random_real_spectrum, random_segre, random_square_zero,
    random_unit_quaternion, RealSpectrumInstance,
};
pub use oracle::{re_trace, trace_word_oracle, words};

use rand::SeedableRng;

/// ChaCha8 seeded from a `u64`; the same seed gives the same stream on every
/// platform.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}
