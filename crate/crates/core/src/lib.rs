//! Exact hitting times, effective resistances, Kirchhoff indices and
//! spanning-tree counts for the square of a cycle C²_N (N ≥ 5), together with
//! the independent checks used to confirm each closed form: exact Gaussian
//! elimination, Matrix-Tree determinants, Q(√5) evaluation and a seeded Monte
//! Carlo walk.

pub mod closed_form;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod resistance;
pub mod simulate;
pub mod verify;

pub use closed_form::{
    chair_hitting_time, hitting_first, hitting_time, normalized_excess, scaled_hitting, y_vector,
    z_vector, HitResult,
};
pub use decomposition::{
    build_bundle, h_inverse_entry, s_entry_case, verify_factorization, DecompositionBundle,
};
pub use error::{Error, Result};
pub use exact::{fib, identity_check, to_decimal, Integer, Rational, Surd5};
pub use graph::{build_h, CycleSquare, HalvedSystem, MIN_N};
pub use matrix::ExactMatrix;
pub use resistance::{
    convolution_identity, effective_resistance, kirchhoff_index, kirchhoff_index_by_sum,
    merged_tree_count, tree_count, ResistanceResult,
};
pub use simulate::{empirical_vs_exact, simulate, EmpiricalReport, WalkConfig, WalkStats};
