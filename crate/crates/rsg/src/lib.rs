//! File formats, JSON reports, wall-clock budgets and the command line for
//! the RS graph workbench. The algorithms live in `rsg-core`.

pub mod budget;
pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{emit_rsg, parse_rsg, ParseError};
pub use parallel::{exists_rs_parallel, WallClock};
