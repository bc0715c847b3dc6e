//! SAT-guided search: model loop, nested loop with inner core extraction.

mod cdcl;
mod loops;

pub use cdcl::{Cdcl, Lit};
pub use loops::{
    inner_loop, minimize, model_loop, nested_loop, ClauseCause, Heuristics, LoggedClause, SearchOptions,
    SearchOutcome,
};
