//! Command-line front end.

pub mod app;
pub mod files;
pub mod parse;

pub use app::{run, Report};
pub use files::{parse_dae, SystemSource};
