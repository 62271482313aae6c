//! Support code for the `typical` command-line tool.

pub mod output;
pub mod positions;
pub mod settings;
