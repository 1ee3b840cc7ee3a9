//! Command-line front end for `genroots`: JSON equation documents in,
//! JSON or CSV root reports out.

pub mod commands;
pub mod document;
pub mod json;
pub mod report;

pub use commands::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_QUALITY};
