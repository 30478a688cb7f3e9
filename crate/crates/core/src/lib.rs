//! Exact symbolic tools for realizing input-output DAEs as rational state-space systems.

pub mod arith;
pub mod cli;
pub mod diffring;
pub mod dynsys;
pub mod param;
pub mod realize;
