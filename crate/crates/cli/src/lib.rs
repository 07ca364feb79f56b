//! Command-line front end: argument grammar, handlers and output rendering.

pub mod args;
pub mod registry;
pub mod render;
pub mod run;

pub use run::{execute, Outcome};
