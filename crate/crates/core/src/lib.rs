//! Boolean abstraction of LTL specifications modulo arithmetic theories.

pub mod abstraction;
pub mod error;
pub mod game;
pub mod io;
pub mod model;
pub mod pipeline;
pub mod search;
pub mod smt;

pub use error::{Error, ParseError, Result};
