//! Text format, reports and command-line driver for `qualprob-core`.

pub mod commands;
pub mod document;
pub mod render;

pub use commands::{main_with, run, Cli, Command, Method, Outcome, ScalingArg, Suite};
pub use document::{parse, serialize, Document, ParseError, Reason};
pub use render::Status;
