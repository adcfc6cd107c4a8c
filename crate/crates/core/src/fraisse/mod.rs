//! Fraïssé classes: membership, hereditary property, joint embedding, amalgamation,
//! free amalgams, ages and finite approximations of limits.

pub mod amalgam;
pub mod class;
pub mod limit;

pub use amalgam::{
    check_ap, check_embedding, check_hereditary, check_jep, free_amalgam, free_amalgam_with_maps, solve_amalgamation,
    AmalgamVerdict, AmalgamationReport, AmalgamationWitness, HereditaryReport, HereditaryWitness, JointEmbeddingReport,
};
pub use class::{ClassKind, ClassSpec};
pub use limit::{age, age_coverage, limit_approximation, small_embedding, window_extension_failures, AgeEntry, Approximation};
