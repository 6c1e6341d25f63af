//! Command-line front end: problem-file parsing, command dispatch and
//! report rendering.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{run, Command, Failure, Options};
pub use problem::{parse_input, InputError, ProblemFile};
pub use report::Report;
