//! Text formats: theory specifications, Boolean documents, run statistics.

mod boolean_doc;
mod lexer;
mod parser;
mod spec_doc;
mod stats;

pub use boolean_doc::{emit_boolean_spec, parse_boolean_document, parse_boolean_spec, BooleanDocument};
pub use spec_doc::{parse_spec, parse_spec_with, ParseOptions};
pub use stats::{emit_stats, parse_stats, Algorithm, ClusterStats, HeuristicsRecord, RunStats};
