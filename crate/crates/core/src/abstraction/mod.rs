//! Choices, the quasi-reaction lattice, brute-force abstraction and assembly.

mod assemble;
mod choice;
mod vr;

pub use assemble::{assemble, get_extra, minterm, BooleanSpec, ClusterAbstraction, Encoding};
pub use choice::{
    choice_formula, enumerate_choices, enumerate_choices_limited, Choice, ChoiceSet, QuasiReaction,
    DEFAULT_CHOICE_LIMIT,
};
pub use vr::{brute_force, reaction_count, BruteForceOptions, ValidReactionSet, DEFAULT_QUERY_CAP};
