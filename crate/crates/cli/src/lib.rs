//! Command-line front end for posetlab: poset documents, property checks,
//! statement verification, counterexample search and DOT export.

pub mod commands;
pub mod document;
pub mod dot;

pub use commands::{CliError, Report};
pub use document::{ParseError, PosetDocument};
