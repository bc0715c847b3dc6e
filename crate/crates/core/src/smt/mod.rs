//! Validity queries and the external solver gateway.

mod gateway;
mod process;
mod query;

pub use gateway::{FnOracle, GatewayStats, OracleBook, QueryTag, SmtGateway, ValidityOracle, Verdict};
pub use process::{SatResult, SolverCommand, SolverProcess, DEFAULT_TIMEOUT, SOLVER_ENV};
pub use query::{build_query, QueryContext, ValidityQuery};
