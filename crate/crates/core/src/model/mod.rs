//! Specification model: terms, atoms, LTL trees, literal tables, clusters.

mod cluster;
mod formula;
mod literals;
mod term;

pub use cluster::{cluster_literals, single_cluster, Cluster};
pub use formula::{BoolFormula, DisplayAtom, Formula};
pub use literals::{
    collect_literals, literal_prop, substitute, LiteralEntry, LiteralTable, OwnerMix, Polarity,
    TheorySpec,
};
pub use term::{
    parse_decimal, rational_to_f64, Atom, Comparison, Owner, RelOp, Sort, Term, Theory, Variable,
};
