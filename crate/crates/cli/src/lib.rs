//! Building blocks of the `regulab` command-line tool.

pub mod commands;
pub mod grid;
pub mod report;
