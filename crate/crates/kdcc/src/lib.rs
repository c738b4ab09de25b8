//! File formats, JSON reports and the command-line driver for `kdcc-core`.

pub mod cli;
pub mod io;
pub mod random;
pub mod report;
