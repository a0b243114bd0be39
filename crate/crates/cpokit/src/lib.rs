//! File formats, DOT export, and the `cpokit` command line on top of
//! [`cpokit_core`].

pub mod cli;
pub mod dot;
pub mod format;

pub use cli::{run, Outcome};
